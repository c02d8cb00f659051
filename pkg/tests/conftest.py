import random

import pytest

from normrig.framework import make_framework, well_positioned
from normrig.graphs import make_graph


def random_graph(rng, n_min=2, n_max=8):
    n = rng.randint(n_min, n_max)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = rng.randint(0, len(pairs))
    return make_graph(range(n), rng.sample(pairs, m))


def _edge_margin(fw):
    """Smallest gap between the best and second-best facet value over edges.

    Infinity for smooth norms; a positive margin keeps central differences on
    one linear piece of a polyhedral norm.
    """
    if not fw.norm.is_polyhedral:
        return float("inf")
    worst = float("inf")
    for u, v in fw.graph.edges:
        values = sorted((float(sum(a * b for a, b in zip(f, fw.edge_vector(u, v))))
                         for f in fw.norm.facets), reverse=True)
        worst = min(worst, values[0] - values[1])
    return worst


def random_well_positioned_framework(rng, norm, n_min=3, n_max=6, margin=1e-3):
    """Random connected-ish framework with float placement, resampled until
    all edges sit strictly inside facet cones."""
    n = rng.randint(n_min, n_max)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = rng.randint(n - 1, min(len(pairs), 2 * n - 1))
    edges = rng.sample(pairs, m)
    graph = make_graph(range(n), edges)
    for _ in range(500):
        points = {v: tuple(rng.uniform(-1.0, 1.0) for _ in range(norm.dim))
                  for v in graph.vertices}
        if min(max(abs(a - b) for a, b in zip(points[u], points[w]))
               for u in graph.vertices for w in graph.vertices if u != w) < 1e-2:
            continue
        fw = make_framework(graph, points, norm)
        ok, _ = well_positioned(fw)
        if ok and _edge_margin(fw) > margin:
            return fw
    raise RuntimeError("failed to sample a well-positioned framework")


@pytest.fixture
def rng():
    return random.Random(20240817)
