import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normrig import norms
from normrig.scalars import FLOAT_CTX, UnsupportedError

LINF2 = norms.linf(2)
L2_2 = norms.euclidean(2)


def test_evaluate_examples():
    assert LINF2.evaluate((F(1), F(1, 3))) == 1
    assert L2_2.evaluate((3, 4)) == pytest.approx(5.0)
    square = norms.polyhedral([(F(1), F(0)), (F(-1), F(0)), (F(0), F(1)), (F(0), F(-1))])
    assert square.evaluate((F(-2), F(1))) == 2


def test_evaluate_dimension_mismatch():
    with pytest.raises(ValueError):
        LINF2.evaluate((1, 2, 3))


def test_norm_axioms_sampled(rng):
    for norm in (LINF2, L2_2, norms.lq(2, F(3, 2)), norms.l1(3)):
        d = norm.dim
        for _ in range(50):
            x = tuple(rng.uniform(-2, 2) for _ in range(d))
            y = tuple(rng.uniform(-2, 2) for _ in range(d))
            nx, ny = norm.evaluate(x), norm.evaluate(y)
            assert norm.evaluate(tuple(a + b for a, b in zip(x, y))) <= nx + ny + 1e-9
            assert norm.evaluate(tuple(2.5 * a for a in x)) == pytest.approx(2.5 * nx)
        assert norm.evaluate((0,) * d) == 0


def test_one_sided_derivative_corner():
    x, up = (F(1), F(1)), (F(0), F(1))
    assert LINF2.one_sided_derivative(x, up, "plus") == 1
    assert LINF2.one_sided_derivative(x, up, "minus") == 0


def test_one_sided_derivative_difference_quotient():
    t = 1e-6
    x, y = (1.0, 1.0), (0.0, 1.0)
    for side, tt in (("plus", t), ("minus", -t)):
        quotient = (LINF2.evaluate((x[0] + tt * y[0], x[1] + tt * y[1])) - LINF2.evaluate(x)) / tt
        assert float(LINF2.one_sided_derivative(x, y, side)) == pytest.approx(quotient, abs=1e-5)


def test_one_sided_derivative_smooth_and_ray():
    assert L2_2.one_sided_derivative((1, 0), (0, 1), "plus") == pytest.approx(0.0)
    assert L2_2.one_sided_derivative((1, 0), (0, 1), "minus") == pytest.approx(0.0)
    for norm in (LINF2, L2_2, norms.lq(2, 3)):
        x = (0.4, -1.2)
        for side in ("plus", "minus"):
            assert float(norm.one_sided_derivative(x, x, side)) == pytest.approx(
                float(norm.evaluate(x)))


def test_one_sided_derivative_zero_base_errors():
    with pytest.raises(ValueError):
        LINF2.one_sided_derivative((F(0), F(0)), (F(1), F(0)))


@given(st.lists(st.fractions(min_value=-5, max_value=5), min_size=2, max_size=2),
       st.lists(st.fractions(min_value=-5, max_value=5), min_size=2, max_size=2))
@settings(max_examples=200, deadline=None)
def test_one_sided_minus_is_reflected_plus(xs, ys):
    x, y = tuple(xs), tuple(ys)
    if all(c == 0 for c in x):
        return
    neg_y = tuple(-c for c in y)
    for norm in (LINF2, norms.l1(2)):
        assert norm.one_sided_derivative(x, y, "minus") == \
            -norm.one_sided_derivative(x, neg_y, "plus")


def test_support_functional_examples():
    assert LINF2.support_functional((F(1), F(1, 3))) == (F(1), F(0))
    assert LINF2.support_functional((F(1), F(1))) is None
    assert L2_2.support_functional((3, 4)) == pytest.approx((0.6, 0.8))
    with pytest.raises(ValueError):
        LINF2.support_functional((F(0), F(0)))


def test_support_functional_defining_identities(rng):
    for norm in (LINF2, L2_2, norms.lq(2, 3), norms.l1(2)):
        hits = 0
        while hits < 100:
            x = tuple(rng.uniform(-2, 2) for _ in range(2))
            f = norm.support_functional(x, FLOAT_CTX)
            if f is None:
                continue
            hits += 1
            assert float(sum(a * b for a, b in zip(f, x))) == pytest.approx(
                float(norm.evaluate(x)), abs=1e-9)
            y = tuple(rng.uniform(-2, 2) for _ in range(2))
            assert abs(float(sum(a * b for a, b in zip(f, y)))) <= float(norm.evaluate(y)) + 1e-9


@given(st.fractions(min_value=F(1, 10), max_value=10),
       st.lists(st.fractions(min_value=-3, max_value=3), min_size=2, max_size=2))
@settings(max_examples=150, deadline=None)
def test_support_functional_scaling_and_antipode(lam, xs):
    x = tuple(xs)
    if all(c == 0 for c in x):
        return
    f = LINF2.support_functional(x)
    scaled = LINF2.support_functional(tuple(lam * c for c in x))
    assert f == scaled
    neg = LINF2.support_functional(tuple(-c for c in x))
    if f is None:
        assert neg is None
    else:
        assert neg == tuple(-c for c in f)


@pytest.mark.parametrize("q", [1.5, 3, math.inf])
def test_directional_derivative_matches_finite_differences(q):
    norm = norms.lq(2, F(3, 2)) if q == 1.5 else (norms.linf(2) if q == math.inf else norms.lq(2, q))
    rng = random.Random(5)
    step = 1e-6
    checked = 0
    while checked < 1000:
        x = tuple(rng.uniform(-2, 2) for _ in range(2))
        if norm.evaluate(x) < 1e-2 or norm.support_functional(x, FLOAT_CTX) is None:
            continue
        if norm.is_polyhedral:
            vals = sorted((sum(a * b for a, b in zip(f, x)) for f in norm.facets), reverse=True)
            if vals[0] - vals[1] < 1e-3:
                continue
        y = tuple(rng.uniform(-1, 1) for _ in range(2))
        analytic = float(norm.one_sided_derivative(x, y, "plus"))
        fd = (norm.evaluate(tuple(a + step * b for a, b in zip(x, y)))
              - norm.evaluate(tuple(a - step * b for a, b in zip(x, y)))) / (2 * step)
        assert analytic == pytest.approx(fd, abs=1e-5)
        checked += 1


def test_isometry_group_linf_has_order_eight():
    group = LINF2.isometry_group()
    assert group.finite and len(group) == 8


def test_isometry_group_euclidean_infinite():
    group = norms.euclidean(3).isometry_group()
    assert not group.finite
    assert not norms.lq(3, 2).isometry_group().finite


def test_isometry_group_hexagonal_prism_has_order_24():
    group = norms.hexagonal_prism().isometry_group()
    assert group.finite and len(group) == 24


def test_isometry_group_is_a_group():
    for norm in (LINF2, norms.l1(2)):
        group = norm.isometry_group()
        mats = {tuple(tuple(F(x) for x in row) for row in m) for m in group.matrices}
        ident = tuple(tuple(F(int(i == j)) for j in range(2)) for i in range(2))
        assert ident in mats
        for a in group.matrices:
            assert norm.is_isometry(a)
            for b in group.matrices:
                prod = tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2))
                                   for j in range(2)) for i in range(2))
                assert tuple(tuple(F(x) for x in row) for row in prod) in mats
        from normrig import numeric
        for a in group.matrices:
            inv = numeric.mat_inverse(a)
            assert tuple(tuple(F(x) for x in row) for row in inv) in mats


def test_hexagonal_prism_group_closed_under_products():
    group = norms.hexagonal_prism().isometry_group()
    keys = {tuple(round(float(x), 6) for row in m for x in row) for m in group.matrices}
    sample = group.matrices[::5]
    from normrig import numeric
    for a in sample:
        for b in sample:
            prod = numeric.mat_mul(a, b)
            assert tuple(round(float(x), 6) for row in prod for x in row) in keys
        assert norms.hexagonal_prism().is_isometry(a)


def test_lq_isometries_are_signed_permutations():
    group = norms.lq(2, 3).isometry_group()
    assert len(group) == 8
    group3 = norms.lq(3, F(3, 2)).isometry_group()
    assert len(group3) == 48


def test_is_isometry_examples():
    rot90 = ((F(0), F(-1)), (F(1), F(0)))
    assert LINF2.is_isometry(rot90)
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    assert not LINF2.is_isometry(((c, -s), (s, c)))
    ident = ((F(1), F(0)), (F(0), F(1)))
    for norm in (LINF2, L2_2, norms.lq(2, 3)):
        assert norm.is_isometry(ident)
    with pytest.raises(ValueError):
        LINF2.is_isometry(((F(1), F(0)), (F(2), F(0))))


def test_polyhedral_validation():
    with pytest.raises(ValueError):
        norms.polyhedral([(F(1), F(0)), (F(0), F(1))])  # no antipodes
    with pytest.raises(ValueError):
        norms.polyhedral([(F(1), F(0), F(0)), (F(-1), F(0), F(0))])  # unbounded


def test_vertex_to_facet_conversion_matches_analytic_hexprism():
    pts = [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3), z)
           for k in range(6) for z in (1.0, -1.0)]
    built = norms.from_ball_vertices(pts)
    reference = norms.hexagonal_prism()
    key = lambda fs: sorted(tuple(round(float(c), 9) for c in f) for f in fs)
    assert key(built.facets) == key(reference.facets)
    with pytest.raises(UnsupportedError):
        norms.from_ball_vertices([(1, 0, 0, 0), (-1, 0, 0, 0)])


def test_lq_lowering_and_flags():
    assert norms.lq(2, 1).is_polyhedral
    assert norms.lq(2, math.inf).is_polyhedral
    assert norms.lq(2, 2).is_euclidean
    assert not norms.lq(2, 2).has_finite_isometries
    with pytest.raises(ValueError):
        norms.lq(2, F(1, 2))


def test_isometry_brute_force_caps():
    with pytest.raises(UnsupportedError):
        norms.l1(4).isometry_group()  # dim above polyhedral brute-force cap
