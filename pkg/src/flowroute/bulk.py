"""Whole-graph flow and distance sweeps on compiled kernels.

Table generation needs max-flow values for every (neighbor, destination)
pair of every owner, which is far too many single queries for pure Python
at N = 100..200. Per owner we instead build a flow-equivalent tree
(Gusfield's method, |V'| - 1 max-flow calls) and read pair values off
tree paths.

Flows run on a numba-compiled augmenting-path kernel over CSR arrays when
numba is importable, otherwise on ``scipy.sparse.csgraph.maximum_flow``.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, maximum_flow, shortest_path

from .graph import Graph

try:
    from numba import njit
except ImportError:  # pragma: no cover - only without numba
    njit = None

UNREACHABLE = -1


def _unit_flow_py(indptr, indices, rev, cap0, s, t):
    # BFS augmenting paths on unit capacities; returns (value, source side)
    cap = cap0.copy()
    n = indptr.size - 1
    parent = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    value = 0
    while True:
        parent[:] = -1
        parent[s] = -2
        queue[0] = s
        head, tail = 0, 1
        found = False
        while head < tail and not found:
            u = queue[head]
            head += 1
            for a in range(indptr[u], indptr[u + 1]):
                v = indices[a]
                if cap[a] > 0 and parent[v] == -1:
                    parent[v] = a
                    if v == t:
                        found = True
                        break
                    queue[tail] = v
                    tail += 1
        if not found:
            return value, parent != -1
        v = t
        while v != s:
            a = parent[v]
            cap[a] -= 1
            cap[rev[a]] += 1
            v = indices[rev[a]]
        value += 1


_unit_flow = njit(cache=True)(_unit_flow_py) if njit is not None else None


def to_csr(g: Graph) -> csr_matrix:
    n = g.node_count
    rows = [u for u in range(n) for _ in g.adjacency[u]]
    cols = [v for u in range(n) for v in g.adjacency[u]]
    data = np.ones(len(rows), dtype=np.int32)
    return csr_matrix((data, (rows, cols)), shape=(n, n), dtype=np.int32)


class FlowSolver:
    """Repeated unit-capacity max-flow queries on one fixed graph.

    Arcs are stored CSR-style; arc ``a`` (u -> v) and ``rev[a]`` (v -> u)
    make up one undirected edge, each with capacity 1.
    """

    def __init__(self, g: Graph, backend: str | None = None):
        self.graph = g
        self.backend = backend or ("numba" if _unit_flow is not None else "scipy")
        adj = g.adjacency
        self.indptr = np.zeros(g.node_count + 1, dtype=np.int64)
        self.indptr[1:] = np.cumsum([len(a) for a in adj])
        self.indices = np.array([v for a in adj for v in a], dtype=np.int64)
        self._pos = {(u, v): int(self.indptr[u]) + i
                     for u, a in enumerate(adj) for i, v in enumerate(a)}
        self.rev = np.array([self._pos[(v, u)] for (u, v) in self._pos], dtype=np.int64)
        self.cap = np.ones(self.indices.size, dtype=np.int64)

    def without_edges(self, edges) -> "FlowSolver":
        """Solver for the same graph with ``edges`` at capacity 0."""
        out = object.__new__(FlowSolver)
        out.__dict__.update(self.__dict__)
        out.cap = self.cap.copy()
        for u, v in edges:
            a = self._pos[(u, v)]
            out.cap[a] = 0
            out.cap[self.rev[a]] = 0
        return out

    def cut(self, s: int, t: int) -> tuple[int, np.ndarray]:
        """(value, boolean mask of the residual-reachable side of ``s``)."""
        if s == t:
            raise ValueError("flow is undefined for identical endpoints")
        if self.backend == "numba":
            value, side = _unit_flow(self.indptr, self.indices, self.rev, self.cap, s, t)
            return int(value), side
        return self._scipy_cut(s, t)

    def _scipy_cut(self, s: int, t: int) -> tuple[int, np.ndarray]:
        n = self.graph.node_count
        side = np.zeros(n, dtype=bool)
        m = csr_matrix((self.cap.astype(np.int32), self.indices.astype(np.int32),
                        self.indptr.astype(np.int32)), shape=(n, n))
        m.eliminate_zeros()
        if m.nnz == 0:
            side[s] = True
            return 0, side
        res = maximum_flow(m, s, t, method="dinic")
        residual = (m - res.flow).tocsr()
        residual.data[residual.data < 0] = 0
        residual.eliminate_zeros()
        side[breadth_first_order(residual, s, directed=True, return_predecessors=False)] = True
        return int(res.flow_value), side

    def value(self, s: int, t: int) -> int:
        return self.cut(s, t)[0]


class FlowTree:
    """Flow-equivalent tree over the present nodes of a graph.

    ``value(u, v)`` is the minimum edge weight on the tree path u..v, which
    equals the u-v max-flow in the original graph.
    """

    def __init__(self, g: Graph, solver: FlowSolver | None = None):
        nodes = g.nodes()
        self.graph = g
        self.parent = {v: nodes[0] for v in nodes} if nodes else {}
        self.weight: dict[int, int] = {}
        solver = solver or FlowSolver(g)
        for i, v in enumerate(nodes[1:], start=1):
            t = self.parent[v]
            val, side = solver.cut(v, t)
            self.weight[v] = val
            for u in nodes[i + 1:]:
                if side[u] and self.parent[u] == t:
                    self.parent[u] = v
        self._tree: dict[int, list[tuple[int, int]]] = {v: [] for v in nodes}
        for v, w in self.weight.items():
            p = self.parent[v]
            self._tree[v].append((p, w))
            self._tree[p].append((v, w))

    def values_from(self, src: int) -> np.ndarray:
        """Max-flow from ``src`` to every node (0 for absent nodes and ``src``)."""
        out = np.zeros(self.graph.node_count, dtype=np.int64)
        big = np.iinfo(np.int64).max
        stack = [(src, -1, big)]
        while stack:
            u, prev, m = stack.pop()
            if u != src:
                out[u] = m
            for v, w in self._tree[u]:
                if v != prev:
                    stack.append((v, u, min(m, w)))
        return out

    def value(self, u: int, v: int) -> int:
        return int(self.values_from(u)[v])


def hop_matrix(g: Graph, sources) -> np.ndarray:
    """Hop distances from each of ``sources`` (rows) to every node;
    ``UNREACHABLE`` where there is no path."""
    sources = list(sources)
    if not sources:
        return np.zeros((0, g.node_count), dtype=np.int64)
    d = shortest_path(to_csr(g), method="D", unweighted=True, indices=sources)
    d = np.atleast_2d(d)
    out = np.full(d.shape, UNREACHABLE, dtype=np.int64)
    finite = np.isfinite(d)
    out[finite] = d[finite].astype(np.int64)
    return out
