"""(k,l)-sparsity via the pebble game, with independent oracles.

The pebble game maintains k pebbles per vertex on an orientation of the
accepted edges; an edge is insertable when l+1 pebbles can be gathered on its
endpoints.  When insertion fails, the set of vertices reachable from the
endpoints induces a subgraph violating the count, which is returned as a
witness.  Valid for 0 <= l < 2k on simple graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .graphs import Graph

BRUTE_FORCE_MAX_VERTICES = 10
TWO_TREE_MAX_EDGES = 22


@dataclass(frozen=True)
class SparsityParams:
    k: int
    l: int

    def __post_init__(self):
        if self.k < 1 or not (0 <= self.l < 2 * self.k):
            raise ValueError("pebble game requires k >= 1 and 0 <= l < 2k")


class _PebbleGame:
    """One game per call; internal state is mutated during insertion."""

    def __init__(self, vertices, params: SparsityParams):
        self.k = params.k
        self.l = params.l
        self.pebbles = {v: params.k for v in vertices}
        self.out = {v: set() for v in vertices}

    def _find_and_pull(self, start, blocked) -> bool:
        # DFS over the orientation for a free pebble; reverse the path to move it.
        parent = {start: None}
        stack = [start]
        while stack:
            x = stack.pop()
            for w in self.out[x]:
                if w in parent:
                    continue
                parent[w] = x
                if w not in blocked and self.pebbles[w] > 0:
                    self.pebbles[w] -= 1
                    self.pebbles[start] += 1
                    node = w
                    while parent[node] is not None:
                        prev = parent[node]
                        self.out[prev].discard(node)
                        self.out[node].add(prev)
                        node = prev
                    return True
                stack.append(w)
        return False

    def insert(self, u, v) -> bool:
        blocked = {u, v}
        while self.pebbles[u] + self.pebbles[v] < self.l + 1:
            if not (self._find_and_pull(u, blocked) or self._find_and_pull(v, blocked)):
                return False
        tail, head = (u, v) if self.pebbles[u] > 0 else (v, u)
        self.pebbles[tail] -= 1
        self.out[tail].add(head)
        return True

    def reachable(self, u, v):
        seen = {u, v}
        stack = [u, v]
        while stack:
            x = stack.pop()
            for w in self.out[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen


def is_sparse(g: Graph, params: SparsityParams):
    """(sparse, witness): witness is a violating vertex set when not sparse."""
    game = _PebbleGame(g.vertices, params)
    for u, v in g.edges:
        if not game.insert(u, v):
            return False, frozenset(game.reachable(u, v))
    return True, None


def is_tight(g: Graph, params: SparsityParams) -> bool:
    sparse, _ = is_sparse(g, params)
    return sparse and g.m == params.k * g.n - params.l


def brute_force_sparse(g: Graph, params: SparsityParams) -> bool:
    """Exhaustive oracle over induced subgraphs (sufficient: induced subgraphs
    maximize edge counts over a vertex set)."""
    if g.n > BRUTE_FORCE_MAX_VERTICES:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_MAX_VERTICES} vertices")
    for size in range(2, g.n + 1):
        for subset in itertools.combinations(g.vertices, size):
            if len(g.induced_edges(subset)) > params.k * size - params.l:
                return False
    return True


def brute_force_tight(g: Graph, params: SparsityParams) -> bool:
    return brute_force_sparse(g, params) and g.m == params.k * g.n - params.l


def two_spanning_trees(g: Graph) -> Optional[tuple]:
    """Decompose into two edge-disjoint spanning trees, or None.

    Brute force over (n-1)-subsets; used as a secondary oracle for
    (2,2)-tightness (Nash-Williams).
    """
    if g.m != 2 * (g.n - 1):
        return None
    if g.m > TWO_TREE_MAX_EDGES:
        raise ValueError(f"two-tree search capped at {TWO_TREE_MAX_EDGES} edges")
    edges = list(g.edges)
    for first in itertools.combinations(range(g.m), g.n - 1):
        chosen = set(first)
        t1 = [edges[i] for i in chosen]
        t2 = [edges[i] for i in range(g.m) if i not in chosen]
        if g.is_spanning_tree_edges(t1) and g.is_spanning_tree_edges(t2):
            return tuple(t1), tuple(t2)
    return None


def vertex_orbits(vertices, permutations):
    """Orbits of the group generated by the given vertex permutations."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in permutations:
        for v in vertices:
            a, b = find(v), find(perm[v])
            if a != b:
                parent[a] = b
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    return [tuple(members) for members in groups.values()]


def symmetric_tight_subgraphs(g: Graph, params: SparsityParams, permutations) -> list:
    """All orbit-closed vertex sets (>= 2 vertices) inducing a tight subgraph.

    Requires g sparse, so induced subgraphs are automatically sparse and
    tightness reduces to the edge count; any tight subgraph on a vertex set of
    a sparse graph must use every induced edge, so induced search is complete.
    """
    sparse, witness = is_sparse(g, params)
    if not sparse:
        raise ValueError(f"graph is not ({params.k},{params.l})-sparse; witness {set(witness)}")
    orbits = vertex_orbits(g.vertices, permutations)
    results = []
    for r in range(1, len(orbits) + 1):
        for combo in itertools.combinations(range(len(orbits)), r):
            vs = [v for i in combo for v in orbits[i]]
            if len(vs) < 2:
                continue
            if len(g.induced_edges(vs)) == params.k * len(vs) - params.l:
                results.append(frozenset(vs))
    results.sort(key=lambda s: (len(s), sorted(str(v) for v in s)))
    return results
