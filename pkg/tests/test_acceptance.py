"""Acceptance suite: one check per shipped guarantee, one printed line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL lines.
"""

import itertools
import random
import time
from fractions import Fraction as F

import pytest

from normrig import explorer, norms, numeric
from normrig.document import load_document
from normrig.framework import (
    VERDICT_ISOSTATIC,
    classify_rigidity,
    finite_difference_check,
    rigidity_matrix,
    trivial_flex_space,
)
from normrig.polyhedral import (
    SWAPS,
    edge_colors,
    facet_action,
    quadrilateral_conditions,
    tree_decomposition_check,
)
from normrig.sparsity import SparsityParams, brute_force_sparse, is_sparse, is_tight
from normrig.symmetry import (
    character_table,
    fixed_elements,
    intertwining_check,
    symmetric_count_check,
    validate_symmetric_framework,
)
from conftest import random_graph, random_well_positioned_framework

FIG1 = ("fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f")
ALL_FIXTURES = FIG1 + ("fig3a", "fig3b", "fig3c", "example3d")


def _line(number, ok, detail):
    print(f"\nACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_01_isostatic_suite_exact_and_fast():
    start = time.monotonic()
    results = {}
    for name in FIG1:
        doc = load_document(name)
        fw = doc.framework
        assert fw.ctx.is_exact
        verdict = classify_rigidity(fw)
        trees = tree_decomposition_check(edge_colors(fw))
        results[name] = (verdict.verdict, fw.graph.m == 2 * fw.graph.n - 2, trees)
    elapsed = time.monotonic() - start
    ok = all(v == VERDICT_ISOSTATIC and count and trees
             for v, count, trees in results.values()) and elapsed < 1.0
    _line(1, ok, f"six isostatic sup-norm frameworks, counts tight, trees ok, {elapsed:.3f}s")


def test_criterion_02_fixed_element_counts_and_count_checks():
    expected = {"fig1a": ("s", 1, None), "fig1b": ("s", 2, None),
                "fig1c": ("c2", 0, 2), "fig1d": ("r", 1, None)}
    ok = True
    for name, (el, nv, ne) in expected.items():
        doc = load_document(name)
        vg, eg = fixed_elements(doc.framework.graph, doc.action, el)
        ok &= len(vg) == nv and (ne is None or len(eg) == ne)
    for name in FIG1:
        doc = load_document(name)
        ok &= symmetric_count_check(doc.framework, doc.action).all_passed
    _line(2, ok, "caption fixed-element counts and per-element count checks")


def test_criterion_03_non_isostatic_pair_and_swapping_mirror():
    ok = True
    for name in ("fig3a", "fig3b"):
        doc = load_document(name)
        assert doc.framework.ctx.is_exact
        verdict = classify_rigidity(doc.framework)
        ok &= verdict.verdict != VERDICT_ISOSTATIC
        conds = quadrilateral_conditions(doc.framework.graph, doc.action,
                                         doc.framework.norm, doc.framework.ctx)
        subgraph_fail = any(c.failed_proven and "tight-subgraphs" in c.id for c in conds)
        ok &= subgraph_fail
    doc_c = load_document("fig3c")
    verdict_c = classify_rigidity(doc_c.framework)
    vg, eg = fixed_elements(doc_c.framework.graph, doc_c.action, "s")
    ok &= verdict_c.verdict == VERDICT_ISOSTATIC
    ok &= facet_action(doc_c.framework.norm, doc_c.action.tau["s"]) == SWAPS
    ok &= len(eg) == 0
    _line(3, ok, "double-K4 pair flagged via symmetric tight subgraph; "
                 "swapping-mirror framework isostatic with |E_s|=0")


def test_criterion_04_spatial_prism_framework():
    start = time.monotonic()
    doc = load_document("example3d")
    fw = doc.framework
    ok = fw.ctx.backend == "float" and fw.ctx.tolerance == 1e-9
    ok &= (fw.graph.n, fw.graph.m) == (13, 36)
    verdict = classify_rigidity(fw)
    ok &= verdict.verdict == VERDICT_ISOSTATIC
    ok &= verdict.rank == 36 == 3 * fw.graph.n - 3
    ok &= verdict.dim_flex == 3
    rm = rigidity_matrix(fw)
    _, kernel = numeric.rank_nullspace(rm.matrix, fw.ctx)
    translations = trivial_flex_space(fw).basis
    span = list(kernel)
    for t in translations:
        ok &= numeric.rank(span + [t], fw.ctx) == 3
    ok &= validate_symmetric_framework(fw, doc.action).ok
    vg, eg = fixed_elements(fw.graph, doc.action, "s3")
    ok &= (len(vg), len(eg)) == (1, 0)
    ok &= symmetric_count_check(fw, doc.action).all_passed
    elapsed = time.monotonic() - start
    ok &= elapsed < 1.0
    _line(4, ok, f"13-vertex prism-norm framework isostatic, rank 36, "
                 f"translational kernel, counts ok, {elapsed:.3f}s")


def test_criterion_05_intertwining_residuals():
    ok = True
    for name in ALL_FIXTURES:
        doc = load_document(name)
        residual = intertwining_check(doc.framework, doc.action)
        if doc.framework.ctx.is_exact:
            ok &= residual == 0
        else:
            ok &= float(residual) <= 1e-9
    _line(5, ok, "rigidity matrix intertwines vertex and edge representations "
                 "on every symmetric fixture")


def test_criterion_06_character_table_rows():
    formulas_2d = {"E": (2.0, 2.0), "s": (0.0, 0.0), "C2": (-2.0, -2.0), "C4": (0.0, 0.0)}
    formulas_3d = {"E": (3.0, 3.0), "C3": (0.0, 0.0), "s": (1.0, 1.0), "S3": (-2.0, -2.0)}
    ok = True
    seen = set()
    for name in ALL_FIXTURES:
        doc = load_document(name)
        table = formulas_3d if doc.framework.dim == 3 else formulas_2d
        for row in character_table(doc.framework, doc.action):
            cls = str(row.op)
            seen.add((doc.framework.dim, cls))
            per_vertex, trivial = table[cls]
            ok &= row.chi_edge == row.fixed_edges
            ok &= abs(row.chi_tensor - per_vertex * row.fixed_vertices) <= 1e-9
            ok &= abs(row.chi_trivial - trivial) <= 1e-9
    ok &= {(2, "s"), (2, "C2"), (2, "C4"), (3, "C3"), (3, "s"), (3, "S3")} <= seen
    _line(6, ok, f"character triples match the finite-isometry table rows "
                 f"({len(seen)} operation classes)")


def test_criterion_07_differential_oracle():
    rng = random.Random(424242)
    worst = 0.0
    for dim in (2, 3):
        for build in (norms.euclidean, lambda d: norms.lq(d, 3), norms.linf):
            norm = build(dim)
            for _ in range(100):
                fw = random_well_positioned_framework(rng, norm, n_min=3, n_max=5)
                err = finite_difference_check(fw, trials=4, step=1e-6, seed=rng.randint(0, 9999))
                worst = max(worst, err)
    ok = worst <= 1e-5
    _line(7, ok, f"rigidity matrix matches central differences on 600 random "
                 f"frameworks, worst error {worst:.2e}")


def test_criterion_08_sparsity_oracle():
    rng = random.Random(1234)
    params = SparsityParams(2, 2)
    ok = True
    for _ in range(500):
        g = random_graph(rng, 2, 8)
        ok &= is_sparse(g, params)[0] == brute_force_sparse(g, params)
    for name in ALL_FIXTURES:
        g = load_document(name).framework.graph
        if g.n <= 10:
            ok &= is_sparse(g, params)[0] == brute_force_sparse(g, params)
    fig1a = load_document("fig1a").framework.graph
    ok &= is_tight(fig1a, params)
    _line(8, ok, "pebble game agrees with exhaustive counts on a 500-graph corpus "
                 "plus all bundled fixtures")


def test_criterion_09_soundness_sweep():
    start = time.monotonic()
    report = explorer.default_scan(seed=20240817, max_vertices=6, trials=200)
    ok = report["would_refute_necessity"] == []
    found_total = 0
    for group, rep in report["groups"].items():
        for entry in rep["candidates"]:
            if entry["status"] == "found":
                found_total += 1
                ok &= entry["flags"] == []
    elapsed = time.monotonic() - start
    ok &= elapsed < 300.0
    ok &= found_total > 0
    _line(9, ok, f"five-group scan: {found_total} witnesses, zero refuting flags, "
                 f"{elapsed:.1f}s")


def test_criterion_10_isometry_group_orders():
    sup = norms.linf(2).isometry_group()
    prism = norms.hexagonal_prism().isometry_group()
    ok = sup.finite and len(sup) == 8 and prism.finite and len(prism) == 24
    mats = {tuple(tuple(F(x) for x in row) for row in m) for m in sup.matrices}
    for a, b in itertools.product(sup.matrices, repeat=2):
        prod = numeric.mat_mul(a, b)
        ok &= tuple(tuple(F(x) for x in row) for row in prod) in mats
    _line(10, ok, "sup-norm plane group has order 8 (closed), prism norm order 24")
