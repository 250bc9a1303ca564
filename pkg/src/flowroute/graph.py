"""Undirected unit-capacity graphs, routes, and the edge-list text format.

Graphs are immutable. Removing a node yields a masked view: the node is
marked absent and loses its edges, but every surviving node keeps its id,
so tables keyed by node id stay valid across ``G`` and ``G - {i}``.
"""

from __future__ import annotations

import hashlib
import io
import operator
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Invalid node id, missing edge, or a broken graph invariant."""


class EdgeListError(ValueError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on node ids ``0 .. node_count - 1``.

    Every edge has capacity 1; there is no capacity field.
    """

    __slots__ = ("node_count", "_adj", "_sets", "_present", "_edge_count")

    def __init__(self, node_count: int, edges: Iterable[Edge] = ()):
        if node_count < 0:
            raise GraphError(f"negative node count {node_count}")
        sets = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphError(f"edge ({u}, {v}) outside [0, {node_count})")
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if v in sets[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            sets[u].add(v)
            sets[v].add(u)
        self._init(node_count, sets, (True,) * node_count)

    def _init(self, node_count, sets, present):
        self.node_count = node_count
        self._sets = tuple(frozenset(s) for s in sets)
        self._adj = tuple(tuple(sorted(s)) for s in sets)
        self._present = tuple(present)
        self._edge_count = sum(len(s) for s in sets) // 2

    @classmethod
    def _from_parts(cls, node_count, sets, present) -> "Graph":
        g = cls.__new__(cls)
        g._init(node_count, sets, present)
        return g

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], node_count: int | None = None) -> "Graph":
        edges = list(edges)
        if node_count is None:
            node_count = 1 + max((max(e) for e in edges), default=-1)
        return cls(node_count, edges)

    # --- queries -----------------------------------------------------------

    @property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        return self._adj

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def check_node(self, v: int) -> None:
        try:
            v = operator.index(v)
        except TypeError:
            raise GraphError(f"invalid node id {v!r}") from None
        if not 0 <= v < self.node_count:
            raise GraphError(f"invalid node id {v!r} (node_count={self.node_count})")
        if not self._present[v]:
            raise GraphError(f"node {v} has been removed from this graph")

    def is_present(self, v: int) -> bool:
        return 0 <= v < self.node_count and self._present[v]

    def nodes(self) -> list[int]:
        return [v for v in range(self.node_count) if self._present[v]]

    def neighbors(self, v: int) -> Tuple[int, ...]:
        self.check_node(v)
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.node_count and v in self._sets[u]

    def degree(self, v: int) -> int:
        self.check_node(v)
        return len(self._adj[v])

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.node_count) for v in self._adj[u] if u < v]

    # --- derived graphs ----------------------------------------------------

    def remove_node(self, v: int) -> "Graph":
        self.check_node(v)
        sets = [set(s) for s in self._sets]
        for u in sets[v]:
            sets[u].discard(v)
        sets[v] = set()
        present = list(self._present)
        present[v] = False
        return Graph._from_parts(self.node_count, sets, present)

    def remove_edges(self, edges: Iterable[Edge]) -> "Graph":
        edges = list(edges)
        if not edges:
            return self
        sets = [set(s) for s in self._sets]
        for u, v in edges:
            if not self.has_edge(u, v):
                raise GraphError(f"edge ({u}, {v}) not in graph")
            sets[u].discard(v)
            sets[v].discard(u)
        return Graph._from_parts(self.node_count, sets, self._present)

    def add_edges(self, edges: Iterable[Edge]) -> "Graph":
        sets = [set(s) for s in self._sets]
        for u, v in edges:
            if u == v or self.has_edge(u, v):
                raise GraphError(f"cannot add edge ({u}, {v})")
            self.check_node(u)
            self.check_node(v)
            sets[u].add(v)
            sets[v].add(u)
        return Graph._from_parts(self.node_count, sets, self._present)

    # --- value semantics ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.node_count, self._adj, self._present) == (
            other.node_count, other._adj, other._present)

    def __hash__(self):
        return hash((self.node_count, self._adj, self._present))

    def __repr__(self):
        return f"Graph(node_count={self.node_count}, edges={self._edge_count})"


def remove_node(g: Graph, v: int) -> Graph:
    return g.remove_node(v)


def remove_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    return g.remove_edges(edges)


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


@dataclass(frozen=True)
class Route:
    """Ordered vertex sequence from source to destination."""

    vertices: Tuple[int, ...]

    def __init__(self, vertices: Sequence[int]):
        object.__setattr__(self, "vertices", tuple(vertices))

    def size(self) -> int:
        """Number of vertices, endpoints included."""
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def destination(self) -> int:
        return self.vertices[-1]

    def edges(self) -> list[Edge]:
        return list(zip(self.vertices, self.vertices[1:]))

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        if not vs or len(set(vs)) != len(vs):
            return False
        if not all(g.is_present(v) for v in vs):
            return False
        return all(g.has_edge(u, v) for u, v in self.edges())

    def __str__(self):
        return " -> ".join(map(str, self.vertices))


# --- edge-list format ------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    One edge per line as two whitespace-separated integer ids; ``#`` starts
    a comment line; blank lines are skipped. A ``# nodes: N`` header fixes
    the node count, otherwise it is ``max id + 1``.
    """
    declared = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("nodes:"):
                try:
                    declared = int(body.split(":", 1)[1])
                except ValueError:
                    raise EdgeListError(f"bad node-count header {line!r}", lineno) from None
                if declared < 0:
                    raise EdgeListError("negative node count", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected two node ids, got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"non-integer node id in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise EdgeListError(f"negative node id in {line!r}", lineno)
        if u == v:
            raise EdgeListError(f"self-loop at node {u}", lineno)
        k = _key(u, v)
        if k in seen:
            raise EdgeListError(f"duplicate edge {k} (first on line {seen[k]})", lineno)
        seen[k] = lineno
        if declared is not None and max(u, v) >= declared:
            raise EdgeListError(f"node id {max(u, v)} exceeds declared count {declared}", lineno)
        edges.append((u, v))
    top = 1 + max((max(e) for e in edges), default=-1)
    if declared is not None and top > declared:
        raise EdgeListError(f"node id {top - 1} exceeds declared count {declared}")
    n = declared if declared is not None else top
    return Graph(n, edges)


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"# nodes: {g.node_count}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def edge_checksum(g: Graph) -> str:
    """sha256 over the canonical ``u v`` lines (u < v, sorted)."""
    body = "".join(f"{u} {v}\n" for u, v in g.edges())
    return hashlib.sha256(body.encode("ascii")).hexdigest()
