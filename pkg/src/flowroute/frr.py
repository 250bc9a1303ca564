"""Fast-ReRoute forwarding with backtracking over stale routing tables.

Tables are computed on the pre-failure graph. A node only notices failures
on its own links and neighbors; anything further away is discovered by the
packet getting there and being sent back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Protocol, Sequence

from .graph import Edge, Graph, GraphError, Route
from .flow import has_path


class SimulationError(RuntimeError):
    """The hop budget ran out; forwarding should always terminate first."""


class _Table(Protocol):
    def candidates(self, t: int) -> Sequence: ...


def _link(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class FailureSet:
    failed_links: frozenset = frozenset()
    failed_nodes: frozenset = frozenset()

    def __init__(self, links: Iterable[Edge] = (), nodes: Iterable[int] = ()):
        object.__setattr__(self, "failed_links", frozenset(_link(u, v) for u, v in links))
        object.__setattr__(self, "failed_nodes", frozenset(nodes))

    def link_failed(self, u: int, v: int) -> bool:
        return _link(u, v) in self.failed_links

    def node_failed(self, v: int) -> bool:
        return v in self.failed_nodes

    def validate(self, g: Graph) -> None:
        for u, v in self.failed_links:
            if not g.has_edge(u, v):
                raise GraphError(f"failed link ({u}, {v}) is not in the graph")
        for v in self.failed_nodes:
            g.check_node(v)

    def apply(self, g: Graph) -> Graph:
        """The graph as it really is: failed links and nodes removed."""
        out = g.remove_edges(sorted(self.failed_links))
        for v in sorted(self.failed_nodes):
            out = out.remove_node(v)
        return out

    def __bool__(self):
        return bool(self.failed_links or self.failed_nodes)


@dataclass
class Message:
    dest: int
    hop_budget: int
    visited: list[int] = field(default_factory=list)
    path_stack: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class DeliveryOutcome:
    delivered: bool
    final_route: Optional[Route]
    # every holder in order, revisits after backtracking included
    visited_order: tuple[int, ...]
    hop_count: int
    # msg.visited at the end: first-visit order, dead ends included
    visited: tuple[int, ...]


def forward(g: Graph, tables: Mapping[int, _Table], failures: FailureSet,
            s: int, t: int, hop_budget: Optional[int] = None) -> DeliveryOutcome:
    """Forward one packet from ``s`` to ``t``.

    At each holder ``i``: deliver directly if ``t`` is a neighbor over a live
    link; otherwise record ``i`` as visited and send to the best-ranked entry
    of ``tables[i]`` for ``t`` that is unvisited, alive and reachable over a
    live link. With no such entry the packet goes back to the node it came
    from; at the source that means there is no route.
    """
    g.check_node(s)
    g.check_node(t)
    if s == t:
        raise GraphError("source and destination must differ")
    if failures.node_failed(s) or failures.node_failed(t):
        raise GraphError("source and destination must not be failed")
    if hop_budget is None:
        hop_budget = max(4 * g.edge_count, 1)

    msg = Message(dest=t, hop_budget=hop_budget, path_stack=[s])
    seen: set[int] = set()
    cursor: dict[int, int] = {}
    trace = [s]
    hops = 0

    def send(j: int) -> None:
        nonlocal hops
        hops += 1
        trace.append(j)
        if hops > msg.hop_budget:
            raise SimulationError(f"hop budget {msg.hop_budget} exhausted: {trace}")

    while True:
        i = msg.path_stack[-1]
        if g.has_edge(i, t) and not failures.link_failed(i, t):
            msg.path_stack.append(t)
            send(t)
            return DeliveryOutcome(True, Route(msg.path_stack), tuple(trace), hops,
                                   tuple(msg.visited))
        if i not in seen:
            seen.add(i)
            msg.visited.append(i)
        cands = tables[i].candidates(t)
        k = cursor.get(i, 0)
        chosen = None
        while k < len(cands):
            j = cands[k].neighbor
            k += 1
            if j in seen or failures.node_failed(j) or failures.link_failed(i, j):
                continue
            chosen = j
            break
        cursor[i] = k
        if chosen is not None:
            msg.path_stack.append(chosen)
            send(chosen)
            continue
        msg.path_stack.pop()
        if not msg.path_stack:
            return DeliveryOutcome(False, None, tuple(trace), hops, tuple(msg.visited))
        send(msg.path_stack[-1])


def delivery_matches_reachability(g: Graph, failures: FailureSet, s: int, t: int,
                    tables: Mapping[int, _Table]) -> bool:
    """True when delivery happened exactly when a working s-t route exists."""
    out = forward(g, tables, failures, s, t)
    return out.delivered == has_path(failures.apply(g), s, t)
