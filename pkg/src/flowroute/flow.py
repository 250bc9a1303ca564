"""Unit-capacity max-flow / min-cut, hop distances and reachability.

Everything here is plain Python and works on a single (s, t) query. The
table builder uses the scipy-backed helpers in :mod:`flowroute.bulk` for
whole-graph sweeps; both are checked against each other in the tests.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .graph import Edge, Graph, GraphError, Route


def _check_pair(g: Graph, s: int, t: int) -> None:
    g.check_node(s)
    g.check_node(t)
    if s == t:
        raise GraphError(f"flow is undefined for identical endpoints ({s})")


def _augment(g: Graph, s: int, t: int):
    """Edmonds-Karp on the undirected unit network.

    Each undirected edge {u, v} is one pair of opposite arcs with capacity 1,
    each the other's reverse; ``res[u][v]`` is the residual capacity u -> v
    (0, 1 or 2). Returns (value, residual, source-side set of the last BFS).
    """
    res = [dict.fromkeys(nbrs, 1) for nbrs in g.adjacency]
    value = 0
    while True:
        parent = {s: s}
        queue = deque([s])
        found = False
        while queue and not found:
            u = queue.popleft()
            for v, cap in res[u].items():
                if cap > 0 and v not in parent:
                    parent[v] = u
                    if v == t:
                        found = True
                        break
                    queue.append(v)
        if not found:
            return value, res, set(parent)
        v = t
        while v != s:
            u = parent[v]
            res[u][v] -= 1
            res[v][u] += 1
            v = u
        value += 1


def max_flow(g: Graph, s: int, t: int) -> int:
    """Maximum s-t flow with unit capacities.

    Equals the number of edge-disjoint s-t paths and the size of a minimum
    s-t edge cut.
    """
    _check_pair(g, s, t)
    value, _, _ = _augment(g, s, t)
    return value


def min_cut(g: Graph, s: int, t: int) -> tuple[int, frozenset[Edge]]:
    """One minimum s-t edge cut: the edges leaving the residual-reachable set of s."""
    _check_pair(g, s, t)
    value, _, side = _augment(g, s, t)
    cut = frozenset((u, v) if u < v else (v, u)
                    for u in side for v in g.adjacency[u] if v not in side)
    assert len(cut) == value
    return value, cut


def edge_disjoint_paths(g: Graph, s: int, t: int) -> list[Route]:
    """Decompose a maximum flow into ``max_flow(g, s, t)`` edge-disjoint routes."""
    _check_pair(g, s, t)
    value, res, _ = _augment(g, s, t)
    # net flow u -> v is 1 exactly when the forward residual dropped to 0
    out = {u: sorted(v for v, c in res[u].items() if c == 0) for u in range(g.node_count)}
    routes = []
    for _ in range(value):
        walk = [s]
        pos = {s: 0}
        u = s
        while u != t:
            v = out[u].pop(0)
            if v in pos:
                for w in walk[pos[v] + 1:]:
                    del pos[w]
                del walk[pos[v] + 1:]
            else:
                pos[v] = len(walk)
                walk.append(v)
            u = v
        routes.append(Route(walk))
    return routes


def bfs_distances(g: Graph, s: int) -> list[Optional[int]]:
    """Hop distance from ``s`` to every node; ``None`` where unreachable."""
    g.check_node(s)
    dist: list[Optional[int]] = [None] * g.node_count
    dist[s] = 0
    queue = deque([s])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] is None:
                dist[v] = du
                queue.append(v)
    return dist


def shortest_distance(g: Graph, s: int, t: int) -> Optional[int]:
    """Hop count of a shortest s-t path, or ``None`` when t is unreachable."""
    g.check_node(t)
    return bfs_distances(g, s)[t]


def has_path(g: Graph, s: int, t: int) -> bool:
    return shortest_distance(g, s, t) is not None


def shortest_path(g: Graph, s: int, t: int) -> Optional[Route]:
    """Canonical shortest path: at every step take the smallest-id neighbor
    that is one hop closer to ``t``."""
    _check_pair(g, s, t)
    to_t = bfs_distances(g, t)
    if to_t[s] is None:
        return None
    path = [s]
    u = s
    while u != t:
        u = next(v for v in g.adjacency[u] if to_t[v] == to_t[u] - 1)
        path.append(u)
    return Route(path)
