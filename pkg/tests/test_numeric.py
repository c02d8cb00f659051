import random
from fractions import Fraction as F

import pytest

from normrig import numeric
from normrig.document import load_document
from normrig.framework import rigidity_matrix
from normrig.scalars import EXACT_CTX, FLOAT_CTX, ScalarContext


def test_single_row_rank_and_kernel():
    rank, kernel = numeric.rank_nullspace([[F(1), F(0), F(-1), F(0)]], EXACT_CTX)
    assert rank == 1 and len(kernel) == 3
    for vec in kernel:
        assert sum(a * b for a, b in zip([F(1), F(0), F(-1), F(0)], vec)) == 0


def test_zero_matrix():
    rank, kernel = numeric.rank_nullspace([[F(0)] * 3 for _ in range(3)], EXACT_CTX)
    assert rank == 0 and len(kernel) == 3


def test_empty_matrix_kernel_is_standard_basis():
    empty = numeric.LabeledMatrix((), col_labels=(0, 1, 2))
    rank, kernel = numeric.rank_nullspace(empty, EXACT_CTX)
    assert rank == 0
    assert len(kernel) == 3
    assert kernel[0][0] == 1


def test_isostatic_example_matrix_has_corank_two():
    doc = load_document("fig1c")
    rm = rigidity_matrix(doc.framework)
    rank, kernel = numeric.rank_nullspace(rm.matrix, EXACT_CTX)
    assert (rm.matrix.nrows, rm.matrix.ncols) == (6, 8)
    assert rank == 6 and len(kernel) == 2


def test_rows_independent_examples():
    assert numeric.rows_independent([[F(1), F(0)], [F(0), F(1)]], EXACT_CTX)
    assert not numeric.rows_independent([[F(1), F(0)], [F(2), F(0)]], EXACT_CTX)


def test_double_k4_matrix_is_row_dependent():
    doc = load_document("fig3a")
    rm = rigidity_matrix(doc.framework)
    assert not numeric.rows_independent(rm.matrix, EXACT_CTX)


def test_float_and_exact_ranks_agree_on_random_rational_matrices():
    rng = random.Random(99)
    for _ in range(60):
        rows = rng.randint(1, 8)
        cols = rng.randint(1, 8)
        m = [[F(rng.randint(-4, 4), rng.randint(1, 5)) for _ in range(cols)]
             for _ in range(rows)]
        exact_rank, exact_kernel = numeric.rank_nullspace(m, EXACT_CTX)
        float_rank, _ = numeric.rank_nullspace([[float(x) for x in row] for row in m], FLOAT_CTX)
        assert exact_rank == float_rank
        assert exact_rank + len(exact_kernel) == cols
        for vec in exact_kernel:
            assert all(sum(a * b for a, b in zip(row, vec)) == 0 for row in m)


def test_rank_equals_rank_of_transpose():
    rng = random.Random(123)
    for _ in range(40):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = [[F(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
        assert numeric.rank(m, EXACT_CTX) == numeric.rank(numeric.transpose(m), EXACT_CTX)


def test_kernel_basis_vectors_are_independent():
    m = [[F(1), F(2), F(3), F(4)], [F(2), F(4), F(6), F(8)]]
    rank, kernel = numeric.rank_nullspace(m, EXACT_CTX)
    assert rank == 1 and len(kernel) == 3
    assert numeric.rank(kernel, EXACT_CTX) == 3


def test_float_kernel_residuals_below_tolerance():
    rng = random.Random(7)
    ctx = ScalarContext("float", 1e-9)
    m = [[rng.uniform(-1, 1) for _ in range(6)] for _ in range(3)]
    rank, kernel = numeric.rank_nullspace(m, ctx)
    assert rank + len(kernel) == 6
    scale = max(abs(x) for row in m for x in row)
    for vec in kernel:
        for row in m:
            assert abs(sum(a * b for a, b in zip(row, vec))) <= 1e-9 * max(1.0, scale) * 10


def test_exact_backend_rejects_floats():
    with pytest.raises(ValueError):
        numeric.rank_nullspace([[0.5, 1.0]], EXACT_CTX)


def test_mat_inverse_and_det():
    m = ((F(2), F(1)), (F(1), F(1)))
    inv = numeric.mat_inverse(m)
    assert numeric.mat_mul(m, inv) == numeric.identity(2)
    assert numeric.det(m) == 1
    with pytest.raises(ValueError):
        numeric.mat_inverse(((F(1), F(2)), (F(2), F(4))))


def test_independent_subset_prefix():
    rows = [(F(1), F(0)), (F(2), F(0)), (F(0), F(1))]
    assert numeric.independent_subset(rows, EXACT_CTX) == [0, 2]
