"""Seeded random graph generators and the vendored backbone topologies.

Randomness comes from numpy's PCG64 bit generator. Each generator draws
from one stream seeded with ``SeedSequence(seed, spawn_key=(stage,))``
where ``stage`` is 1 for ER, 2 for BA and 3 for WS, so the same seed gives
unrelated streams across families and identical graphs across runs.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from importlib import resources
from typing import Optional

import numpy as np

from .graph import EdgeListError, Graph, edge_checksum, parse_edge_list

FAMILIES = ("er", "ba", "ws")
_STAGE = {"er": 1, "ba": 2, "ws": 3}

VENDORED = ("internet2", "geant", "rnp", "wide")


class TopologyError(ValueError):
    """Unknown topology name or an invalid generator spec."""


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    seed: int
    er_c: Optional[float] = None
    ba_m: Optional[int] = None
    ws_k: Optional[int] = None
    ws_p: Optional[float] = None

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise TopologyError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 1:
            raise TopologyError(f"n must be positive, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise TopologyError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.family == "er":
            if self.er_c is None or not 0 < self.er_c <= 1:
                raise TopologyError(f"ER needs 0 < c <= 1, got {self.er_c}")
        elif self.family == "ba":
            if self.ba_m is None or not 1 <= self.ba_m < self.n:
                raise TopologyError(f"BA needs 1 <= m < n, got m={self.ba_m}")
        else:
            k, p = self.ws_k, self.ws_p
            if k is None or k % 2 or not 0 <= k < self.n:
                raise TopologyError(f"WS needs an even k < n, got k={k}")
            if p is None or not 0 <= p <= 1:
                raise TopologyError(f"WS needs 0 <= p <= 1, got p={p}")

    @property
    def params(self) -> str:
        if self.family == "er":
            return f"c={self.er_c:g}"
        if self.family == "ba":
            return f"m={self.ba_m}"
        return f"k={self.ws_k};p={self.ws_p:g}"

    def with_seed(self, seed: int) -> "GeneratorSpec":
        return GeneratorSpec(self.family, self.n, seed, self.er_c, self.ba_m, self.ws_k, self.ws_p)


def rng_for(family: str, seed: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(_STAGE[family],))
    return np.random.Generator(np.random.PCG64(ss))


def erdos_renyi(n: int, c: float, rng: np.random.Generator) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < c
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def barabasi_albert(n: int, m: int, rng: np.random.Generator) -> Graph:
    # core: m isolated vertices; vertex m links to all of them
    edges = []
    targets = list(range(m))
    repeated: list[int] = []
    for source in range(m, n):
        edges.extend((source, t) for t in targets)
        repeated.extend(targets)
        repeated.extend([source] * m)
        chosen: list[int] = []
        while len(chosen) < m:
            x = repeated[int(rng.integers(len(repeated)))]
            if x not in chosen:
                chosen.append(x)
        targets = chosen
    return Graph(n, edges)


def watts_strogatz(n: int, k: int, p: float, rng: np.random.Generator) -> Graph:
    adj = [set() for _ in range(n)]
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if v not in adj[u] or rng.random() >= p:
                continue
            if len(adj[u]) >= n - 1:
                continue
            w = int(rng.integers(n))
            while w == u or w in adj[u]:
                w = int(rng.integers(n))
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    return Graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def generate(spec: GeneratorSpec) -> Graph:
    spec.validate()
    rng = rng_for(spec.family, spec.seed)
    if spec.family == "er":
        return erdos_renyi(spec.n, spec.er_c, rng)
    if spec.family == "ba":
        return barabasi_albert(spec.n, spec.ba_m, rng)
    return watts_strogatz(spec.n, spec.ws_k, spec.ws_p, rng)


_CHECKSUM = re.compile(r"^#\s*sha256\(edges\):\s*([0-9a-f]{64})\s*$", re.M)


def vendored_text(name: str) -> str:
    return resources.files("flowroute.data").joinpath(f"{name}.txt").read_text(encoding="utf-8")


def load_topology(name_or_path: str | os.PathLike) -> Graph:
    """Load a vendored backbone by name or an edge-list file by path."""
    key = str(name_or_path).lower()
    if key in VENDORED:
        text = vendored_text(key)
        g = parse_edge_list(text)
        m = _CHECKSUM.search(text)
        if m and m.group(1) != edge_checksum(g):
            raise EdgeListError(f"checksum mismatch in vendored topology {key!r}")
        return g
    if not os.path.exists(name_or_path):
        raise TopologyError(
            f"unknown topology {str(name_or_path)!r}: not one of {VENDORED} and no such file")
    with open(name_or_path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def node_names(name: str) -> dict[int, str]:
    """PoP names recorded in a vendored file's ``# node i: name`` comments."""
    out = {}
    for m in re.finditer(r"^#\s*node\s+(\d+):\s*(.+?)\s*$", vendored_text(name), re.M):
        out[int(m.group(1))] = m.group(2)
    return out
