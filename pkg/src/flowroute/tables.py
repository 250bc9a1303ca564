"""Routing tables: MaxFlowRouting candidate lists and the shortest-path baseline.

A MaxFlowRouting table for owner ``i`` scores every neighbor ``j`` towards
every destination ``t`` on ``G' = G - {i}``::

    gamma(j, t) = w1 * maxflow_G'(j, t) + w2 * hops_G'(j, t)

Neighbors that cannot reach ``t`` in ``G'`` are left out; the rest are kept
sorted by gamma, highest first, smaller node id first on ties.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from . import bulk
from .frr import FailureSet, forward
from .graph import Graph, GraphError, Route

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Weights:
    w1: Number
    w2: Number

    def __post_init__(self):
        for w in (self.w1, self.w2):
            if not isinstance(w, (int, Fraction)) or isinstance(w, bool):
                raise ValueError(f"weights must be int or Fraction, got {w!r}")
        if self.w1 == 0 and self.w2 == 0:
            raise ValueError("at least one weight must be nonzero")

    @classmethod
    def parse(cls, text: str) -> "Weights":
        m = re.fullmatch(r"\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*", text)
        if not m:
            raise ValueError(f"weights must be two signed integers 'w1,w2', got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def gamma(self, flow: int, dist: int) -> Number:
        return self.w1 * flow + self.w2 * dist

    def __str__(self):
        return f"{self.w1},{self.w2}"


STANDARD_WEIGHTS = (Weights(2, -5), Weights(5, -5), Weights(5, -1))


class Candidate(NamedTuple):
    neighbor: int
    gamma: Number
    flow: Optional[int]
    dist: int


class RoutingTable:
    """Per-owner map destination -> ordered candidate next hops.

    Entries are computed on first access from precomputed per-neighbor
    flow/distance rows, so one set of rows serves any number of weightings.
    """

    def __init__(self, owner: int, node_count: int):
        self.owner = owner
        self.node_count = node_count
        self._cache: Dict[int, tuple[Candidate, ...]] = {}

    def candidates(self, t: int) -> tuple[Candidate, ...]:
        try:
            return self._cache[t]
        except KeyError:
            pass
        if not 0 <= t < self.node_count:
            raise GraphError(f"invalid destination {t}")
        found = () if t == self.owner else self._compute(t)
        self._cache[t] = found
        return found

    def _compute(self, t: int) -> tuple[Candidate, ...]:
        raise NotImplementedError

    def next_hops(self, t: int) -> list[int]:
        return [c.neighbor for c in self.candidates(t)]

    @property
    def entries(self) -> dict[int, tuple[Candidate, ...]]:
        """All non-empty entries, keyed by destination."""
        out = {}
        for t in range(self.node_count):
            c = self.candidates(t)
            if c:
                out[t] = c
        return out

    def dump_lines(self) -> list[str]:
        lines = []
        for t, cands in self.entries.items():
            body = " ".join(
                f"{c.neighbor}({c.gamma},{'-' if c.flow is None else c.flow},{c.dist})"
                for c in cands)
            lines.append(f"{self.owner} {t} : {body}")
        return lines


@dataclass(frozen=True)
class NeighborScores:
    """Flow and hop rows for every neighbor of ``owner`` on ``G - {owner}``.

    ``flow[k, t]`` / ``dist[k, t]`` describe neighbor ``neighbors[k]`` towards
    destination ``t``; ``dist`` is ``bulk.UNREACHABLE`` when there is no path.
    ``dest_degree[t]`` is the degree of ``t`` in ``G``, used as the flow of
    the candidate that *is* the destination.
    """

    owner: int
    neighbors: tuple[int, ...]
    flow: np.ndarray
    dist: np.ndarray
    dest_degree: tuple[int, ...]


def neighbor_scores(g: Graph, owner: int) -> NeighborScores:
    g.check_node(owner)
    neighbors = g.neighbors(owner)
    reduced = g.remove_node(owner)
    dist = bulk.hop_matrix(reduced, neighbors)
    n = g.node_count
    flow = np.zeros((len(neighbors), n), dtype=np.int64)
    if neighbors:
        tree = bulk.FlowTree(reduced)
        for k, j in enumerate(neighbors):
            flow[k] = tree.values_from(j)
    degrees = tuple(len(a) for a in g.adjacency)
    return NeighborScores(owner, tuple(neighbors), flow, dist, degrees)


def _scores_for(g: Graph, owners: Sequence[int]) -> list[NeighborScores]:
    return [neighbor_scores(g, v) for v in owners]


def all_neighbor_scores(g: Graph, jobs: int = 1) -> dict[int, NeighborScores]:
    owners = g.nodes()
    if jobs <= 1 or len(owners) < 2:
        scores = _scores_for(g, owners)
    else:
        chunks = [owners[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_scores_for, [g] * len(chunks), chunks))
        scores = [s for part in parts for s in part]
    return {s.owner: s for s in sorted(scores, key=lambda s: s.owner)}


class MaxFlowTable(RoutingTable):
    def __init__(self, scores: NeighborScores, weights: Weights, node_count: int):
        super().__init__(scores.owner, node_count)
        self.scores = scores
        self.weights = weights

    def _compute(self, t: int) -> tuple[Candidate, ...]:
        sc = self.scores
        w = self.weights
        cands = []
        for k, j in enumerate(sc.neighbors):
            if j == t:
                f, d = sc.dest_degree[t], 0
            else:
                d = int(sc.dist[k, t])
                if d == bulk.UNREACHABLE:
                    continue
                f = int(sc.flow[k, t])
                assert f >= 1
            cands.append(Candidate(j, w.gamma(f, d), f, d))
        cands.sort(key=lambda c: (-c.gamma, c.neighbor))
        return tuple(cands)


class DijkstraTable(RoutingTable):
    """Neighbors lying on some shortest owner -> t path, by ascending id."""

    def __init__(self, owner: int, neighbors: Sequence[int], hops: np.ndarray):
        super().__init__(owner, hops.shape[1])
        self.neighbors = tuple(neighbors)
        self.hops = hops

    def _compute(self, t: int) -> tuple[Candidate, ...]:
        h = self.hops
        d_owner = int(h[self.owner, t])
        if d_owner == bulk.UNREACHABLE:
            return ()
        return tuple(Candidate(j, -int(h[j, t]), None, int(h[j, t]))
                     for j in self.neighbors if int(h[j, t]) == d_owner - 1)


def build_table_maxflow(g: Graph, owner: int, w: Weights,
                        scores: Optional[NeighborScores] = None) -> MaxFlowTable:
    if scores is None:
        scores = neighbor_scores(g, owner)
    return MaxFlowTable(scores, w, g.node_count)


def build_tables_maxflow(g: Graph, w: Weights,
                         scores: Optional[Mapping[int, NeighborScores]] = None,
                         jobs: int = 1) -> dict[int, MaxFlowTable]:
    if scores is None:
        scores = all_neighbor_scores(g, jobs)
    return {v: MaxFlowTable(scores[v], w, g.node_count) for v in g.nodes()}


def build_table_dijkstra(g: Graph, owner: int, hops: Optional[np.ndarray] = None) -> DijkstraTable:
    g.check_node(owner)
    if hops is None:
        hops = bulk.hop_matrix(g, range(g.node_count))
    return DijkstraTable(owner, g.neighbors(owner), hops)


def build_tables_dijkstra(g: Graph) -> dict[int, DijkstraTable]:
    hops = bulk.hop_matrix(g, range(g.node_count))
    return {v: DijkstraTable(v, g.adjacency[v], hops) for v in g.nodes()}


def primary_route(tables: Mapping[int, RoutingTable], g: Graph, s: int, t: int) -> Optional[Route]:
    """Route taken by a packet forwarded over ``tables`` with nothing failed."""
    out = forward(g, tables, FailureSet(), s, t)
    return out.final_route if out.delivered else None


def dump_tables(tables: Mapping[int, RoutingTable]) -> str:
    lines = []
    for v in sorted(tables):
        lines.extend(tables[v].dump_lines())
    return "\n".join(lines) + ("\n" if lines else "")
