"""Dual-backend dense linear algebra.

Exact rational rank/nullspace via row reduction over ``Fraction``, and
tolerance-based rank/nullspace via singular values for the float backend.
Matrices are tuples of row tuples; tiny helper functions cover the generic
arithmetic needed elsewhere (products, inverses, transposes) for either
scalar type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .scalars import EXACT_CTX, Scalar, ScalarContext, all_rational

MatrixT = Tuple[Tuple[Scalar, ...], ...]
VectorT = Tuple[Scalar, ...]


@dataclass(frozen=True)
class LabeledMatrix:
    """A rectangular matrix with optional row (edge) and column labels."""

    entries: MatrixT
    row_labels: Optional[tuple] = None
    col_labels: Optional[tuple] = None

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        if self.entries:
            return len(self.entries[0])
        if self.col_labels is not None:
            return len(self.col_labels)
        return 0


def as_matrix(rows) -> MatrixT:
    return tuple(tuple(x for x in row) for row in rows)


def identity(n: int) -> MatrixT:
    return tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def transpose(m: MatrixT) -> MatrixT:
    if not m:
        return ()
    return tuple(tuple(m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def mat_vec(m: MatrixT, x: Sequence[Scalar]) -> VectorT:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in m)


def mat_mul(a: MatrixT, b: MatrixT) -> MatrixT:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_sub(a: MatrixT, b: MatrixT) -> MatrixT:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def vec_sub(a: Sequence[Scalar], b: Sequence[Scalar]) -> VectorT:
    return tuple(x - y for x, y in zip(a, b))


def vec_add(a: Sequence[Scalar], b: Sequence[Scalar]) -> VectorT:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(a: Sequence[Scalar], c: Scalar) -> VectorT:
    return tuple(c * x for x in a)


def dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    return sum(x * y for x, y in zip(a, b))


def abs_max(m: MatrixT) -> Scalar:
    best = 0
    for row in m:
        for x in row:
            if abs(x) > best:
                best = abs(x)
    return best


def det(m: MatrixT) -> Scalar:
    """Determinant by elimination; exact when entries are rational."""
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    result = 1
    for c in range(n):
        pivot = max(range(c, n), key=lambda r: abs(a[r][c]))
        if a[pivot][c] == 0:
            return 0 * result
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            sign = -sign
        result = result * a[c][c]
        inv = a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] / inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * result


def mat_inverse(m: MatrixT) -> MatrixT:
    n = len(m)
    a = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] if all_rational(row)
         else list(row) + [1.0 if i == j else 0.0 for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        pivot = max(range(c, n), key=lambda r: abs(a[r][c]))
        if a[pivot][c] == 0:
            raise ValueError("singular matrix")
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def _entries(m) -> MatrixT:
    if isinstance(m, LabeledMatrix):
        return m.entries
    return as_matrix(m)


def _ncols(m) -> int:
    if isinstance(m, LabeledMatrix):
        return m.ncols
    rows = list(m)
    return len(rows[0]) if rows else 0


def _exact_rank_nullspace(rows: MatrixT, ncols: int):
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(tuple(v))
    return len(pivots), tuple(basis)


def _float_rank_nullspace(rows: MatrixT, ncols: int, tol: float):
    a = np.array([[float(x) for x in row] for row in rows], dtype=float)
    if a.size == 0:
        return 0, tuple(tuple(float(i == j) for j in range(ncols)) for i in range(ncols))
    _, s, vt = np.linalg.svd(a, full_matrices=True)
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        rank = 0
    else:
        rank = int(np.sum(s > tol * smax))
    basis = tuple(tuple(float(x) for x in vt[i]) for i in range(rank, ncols))
    return rank, basis


def rank_nullspace(m, ctx: ScalarContext = EXACT_CTX):
    """Return (rank, kernel basis) of m.

    rank + len(basis) == ncols always holds; the basis is empty exactly when
    the matrix has full column rank.  An empty matrix has rank 0 and the
    standard basis as kernel.
    """
    rows = _entries(m)
    ncols = _ncols(m)
    if not rows or ncols == 0:
        if ncols == 0:
            return 0, ()
        one = Fraction(1) if ctx.is_exact else 1.0
        zero = Fraction(0) if ctx.is_exact else 0.0
        return 0, tuple(tuple(one if i == j else zero for j in range(ncols)) for i in range(ncols))
    if ctx.is_exact:
        if not all(all_rational(row) for row in rows):
            raise ValueError("exact backend requires rational entries")
        return _exact_rank_nullspace(rows, ncols)
    return _float_rank_nullspace(rows, ncols, ctx.tolerance)


def rank(m, ctx: ScalarContext = EXACT_CTX) -> int:
    return rank_nullspace(m, ctx)[0]


def rows_independent(m, ctx: ScalarContext = EXACT_CTX) -> bool:
    rows = _entries(m)
    return rank_nullspace(m, ctx)[0] == len(rows)


def independent_subset(rows, ctx: ScalarContext = EXACT_CTX):
    """Indices of a maximal linearly independent subset of the given rows."""
    chosen = []
    kept = []
    current_rank = 0
    for i, row in enumerate(rows):
        candidate = kept + [row]
        r, _ = rank_nullspace(candidate, ctx)
        if r > current_rank:
            chosen.append(i)
            kept = candidate
            current_rank = r
    return chosen
