"""Finite simple graphs with ordered vertex ids.

The vertex tuple order is significant: it fixes the column blocks of rigidity
matrices and the canonical edge order (edges sorted by endpoint positions,
lower position first).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Tuple

Vertex = Hashable
Edge = Tuple[Vertex, Vertex]


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    def index(self, v: Vertex) -> int:
        return self._index[v]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def canonical_edge(self, u: Vertex, v: Vertex) -> Edge:
        if self._index[u] <= self._index[v]:
            return (u, v)
        return (v, u)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return self.canonical_edge(u, v) in set(self.edges)

    def neighbors(self, v: Vertex):
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))

    def induced_edges(self, vertex_set) -> tuple:
        vs = set(vertex_set)
        return tuple(e for e in self.edges if e[0] in vs and e[1] in vs)

    def subgraph(self, vertex_set) -> "Graph":
        vs = [v for v in self.vertices if v in set(vertex_set)]
        return Graph(tuple(vs), self.induced_edges(vs))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_spanning_tree_edges(self, edge_set) -> bool:
        """True iff edge_set is a spanning tree on this graph's full vertex set."""
        edges = list(edge_set)
        if len(edges) != self.n - 1:
            return False
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True


def make_graph(vertices: Iterable[Vertex], edges: Iterable[Edge]) -> Graph:
    """Validate and canonicalize a simple graph.

    Edges are normalized so the endpoint earlier in the vertex order comes
    first, then sorted by endpoint positions.
    """
    vs = tuple(vertices)
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate vertex ids")
    index = {v: i for i, v in enumerate(vs)}
    seen = set()
    normalized = []
    for e in edges:
        u, v = e
        if u not in index or v not in index:
            raise ValueError(f"edge {e!r} references unknown vertex")
        if u == v:
            raise ValueError(f"loop edge {e!r}")
        key = (min(index[u], index[v]), max(index[u], index[v]))
        if key in seen:
            raise ValueError(f"duplicate edge {e!r}")
        seen.add(key)
        normalized.append(key)
    normalized.sort()
    return Graph(vs, tuple((vs[i], vs[j]) for i, j in normalized))
