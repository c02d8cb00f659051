import itertools
import random

import pytest

from normrig.document import load_document
from normrig.graphs import make_graph
from normrig.sparsity import (
    SparsityParams,
    brute_force_sparse,
    brute_force_tight,
    is_sparse,
    is_tight,
    symmetric_tight_subgraphs,
    two_spanning_trees,
    vertex_orbits,
)
from conftest import random_graph

P22 = SparsityParams(2, 2)
P23 = SparsityParams(2, 3)

TRIANGLE = make_graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
K4 = make_graph([1, 2, 3, 4], list(itertools.combinations([1, 2, 3, 4], 2)))
K5 = make_graph(range(5), list(itertools.combinations(range(5), 2)))


def test_params_range():
    with pytest.raises(ValueError):
        SparsityParams(2, 4)
    with pytest.raises(ValueError):
        SparsityParams(0, 0)


def test_is_sparse_examples():
    assert is_sparse(TRIANGLE, P23) == (True, None)
    ok, witness = is_sparse(K4, P23)
    assert not ok and witness == frozenset({1, 2, 3, 4})
    assert is_sparse(K4, P22)[0]


def test_witness_overcounts():
    ok, witness = is_sparse(K5, P22)
    assert not ok
    induced = K5.induced_edges(witness)
    assert len(induced) > 2 * len(witness) - 2


def test_is_tight_examples():
    assert is_tight(K4, P22)
    assert not is_tight(TRIANGLE, P22)
    fig1a = load_document("fig1a").framework.graph
    assert (fig1a.n, fig1a.m) == (5, 8)
    assert is_tight(fig1a, P22)


def test_brute_force_examples():
    assert brute_force_tight(K4, P22)
    assert not brute_force_sparse(K5, P22)
    empty3 = make_graph([1, 2, 3], [])
    assert brute_force_sparse(empty3, P22)
    assert not brute_force_tight(empty3, P22)
    with pytest.raises(ValueError):
        brute_force_sparse(make_graph(range(11), []), P22)


def test_pebble_game_agrees_with_brute_force_on_random_graphs():
    rng = random.Random(2718)
    for params in (P22, P23, SparsityParams(1, 1), SparsityParams(3, 3)):
        for _ in range(120):
            g = random_graph(rng, 2, 8)
            assert is_sparse(g, params)[0] == brute_force_sparse(g, params)


def test_pebble_game_agrees_on_fixture_graphs():
    for name in ("fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f",
                 "fig3a", "fig3b", "fig3c"):
        g = load_document(name).framework.graph
        assert is_sparse(g, P22)[0] == brute_force_sparse(g, P22)
        assert is_tight(g, P22) == brute_force_tight(g, P22)


def test_insertion_order_does_not_matter():
    rng = random.Random(31)
    g = load_document("fig1b").framework.graph
    for _ in range(10):
        edges = list(g.edges)
        rng.shuffle(edges)
        shuffled = make_graph(g.vertices, edges)
        assert is_sparse(shuffled, P22)[0]


def test_tight_graphs_decompose_into_two_spanning_trees():
    for name in ("fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f", "fig3c"):
        g = load_document(name).framework.graph
        decomposition = two_spanning_trees(g)
        assert decomposition is not None
        t1, t2 = decomposition
        assert set(t1) | set(t2) == set(g.edges)
        assert not set(t1) & set(t2)


def test_non_tight_graph_has_no_two_tree_decomposition():
    assert two_spanning_trees(TRIANGLE) is None
    path = make_graph([1, 2, 3], [(1, 2), (2, 3)])
    assert two_spanning_trees(path) is None


def test_symmetric_tight_subgraphs_whole_k4():
    identity = [{v: v for v in K4.vertices}]
    assert symmetric_tight_subgraphs(K4, P22, identity) == [frozenset(K4.vertices)]


def test_symmetric_tight_subgraphs_requires_sparse_input():
    identity = [{v: v for v in K5.vertices}]
    with pytest.raises(ValueError):
        symmetric_tight_subgraphs(K5, P22, identity)


def test_double_k4_has_mirror_symmetric_tight_subgraph_without_fixed_vertex():
    doc = load_document("fig3a")
    g = doc.framework.graph
    perms = [doc.action.theta[e] for e in doc.action.elements]
    sets = symmetric_tight_subgraphs(g, P22, perms)
    assert frozenset(g.vertices) in sets
    fixed = {v for v in g.vertices if doc.action.theta["s"][v] == v}
    assert fixed == set()


def test_mirror_fixture_tight_subgraphs_contain_fixed_vertex():
    doc = load_document("fig1a")
    g = doc.framework.graph
    perms = [doc.action.theta[e] for e in doc.action.elements]
    fixed = {v for v in g.vertices if doc.action.theta["s"][v] == v}
    assert fixed == {"a"}
    for subset in symmetric_tight_subgraphs(g, P22, perms):
        assert subset & fixed


def test_symmetric_subgraph_sets_are_orbit_closed():
    doc = load_document("fig3b")
    g = doc.framework.graph
    perms = [doc.action.theta[e] for e in doc.action.elements]
    for subset in symmetric_tight_subgraphs(g, P22, perms):
        for perm in perms:
            assert {perm[v] for v in subset} == set(subset)


def test_vertex_orbits():
    doc = load_document("fig1c")
    orbits = vertex_orbits(doc.framework.graph.vertices,
                           [doc.action.theta[e] for e in doc.action.elements])
    assert sorted(sorted(o) for o in orbits) == [["v1", "v2"], ["v3", "v4"]]
