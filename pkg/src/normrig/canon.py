"""Canonical labeling for small graphs (vertices 0..n-1).

Individualization-refinement without pruning: every leaf of the refinement
tree is inspected, so all labelings achieving the minimal adjacency key are
collected.  That set is what makes action deduplication exact: two (graph,
action) pairs coincide up to relabeling iff their minimal keys and minimal
relabeled actions agree.  Adequate for the desk-scale graphs (n <= 8) the
explorer generates.
"""

from __future__ import annotations


def _refine(adj, partition):
    changed = True
    while changed:
        changed = False
        for idx, cell in enumerate(partition):
            if len(cell) == 1:
                continue
            sig = {}
            for v in cell:
                key = tuple(len(adj[v] & set(c)) for c in partition)
                sig.setdefault(key, []).append(v)
            if len(sig) > 1:
                new_cells = tuple(tuple(sig[k]) for k in sorted(sig))
                partition = partition[:idx] + new_cells + partition[idx + 1:]
                changed = True
                break
    return partition


def canonical_labelings(n: int, edges):
    """(canonical edge key, all position maps vertex->index achieving it)."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best_key = None
    best_perms = []

    def leaf(partition):
        nonlocal best_key, best_perms
        order = [c[0] for c in partition]
        pos = {v: i for i, v in enumerate(order)}
        key = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in edges))
        if best_key is None or key < best_key:
            best_key = key
            best_perms = [pos]
        elif key == best_key:
            best_perms.append(pos)

    def search(partition):
        partition = _refine(adj, partition)
        target = next((i for i, c in enumerate(partition) if len(c) > 1), None)
        if target is None:
            leaf(partition)
            return
        cell = partition[target]
        for v in cell:
            rest = tuple(w for w in cell if w != v)
            search(partition[:target] + ((v,), rest) + partition[target + 1:])

    search((tuple(range(n)),))
    return best_key, best_perms


def canonical_pair_key(n: int, edges, element_perms):
    """Canonical key of a graph together with a tuple of vertex permutations.

    element_perms: sequence of dicts vertex -> vertex (one per group element,
    in a fixed element order).  Returns (edge_key, action_key) minimized over
    all canonical labelings of the graph.
    """
    edge_key, perms = canonical_labelings(n, edges)
    best_action = None
    for pos in perms:
        inv = {i: v for v, i in pos.items()}
        action_key = tuple(
            tuple(pos[perm[inv[i]]] for i in range(n)) for perm in element_perms)
        if best_action is None or action_key < best_action:
            best_action = action_key
    return edge_key, best_action
