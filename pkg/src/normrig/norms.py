"""Norms on R^d: evaluation, one-sided derivatives, support functionals,
and finite linear isometry groups.

Three kinds are supported.  Euclidean and the smooth lq norms (1 < q < inf)
carry analytic support functionals; polyhedral norms are given by their facet
covectors (the functionals equal to 1 on facets), which makes the support
functional of a smooth direction literally one of the facet covectors.  l1 and
linf are lowered to polyhedral at construction so a single exact code path
serves all piecewise-linear cases.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import numeric
from .scalars import (
    EXACT_CTX,
    FLOAT_CTX,
    Scalar,
    ScalarContext,
    UnsupportedError,
    all_rational,
)

VectorT = Tuple[Scalar, ...]

ISOMETRY_BRUTE_FORCE_MAX_DIM = 3
ISOMETRY_BRUTE_FORCE_MAX_FACETS = 60

PLUS = "plus"
MINUS = "minus"


@dataclass(frozen=True)
class IsometryGroup:
    finite: bool
    matrices: tuple = ()

    def __len__(self):
        if not self.finite:
            raise UnsupportedError("infinite isometry group has no element list")
        return len(self.matrices)


@dataclass(frozen=True)
class NormSpec:
    """A norm on R^dim.

    kind is one of "euclidean", "lq", "polyhedral".  For "lq", q >= 1 and
    q == 2 is Euclidean-equivalent (smooth, infinite isometry group).  For
    "polyhedral", facets holds the covectors in antipodal pairs recorded by
    facet_pairs (indices into facets).
    """

    dim: int
    kind: str
    q: Optional[Scalar] = None
    facets: Optional[tuple] = None
    facet_pairs: Optional[tuple] = None
    label: Optional[str] = None

    @property
    def is_euclidean(self) -> bool:
        return self.kind == "euclidean" or (self.kind == "lq" and self.q == 2)

    @property
    def has_finite_isometries(self) -> bool:
        return not self.is_euclidean

    @property
    def is_polyhedral(self) -> bool:
        return self.kind == "polyhedral"

    @property
    def exact_capable(self) -> bool:
        """Whether the exact backend can represent this norm's support functionals."""
        return self.is_polyhedral and all(all_rational(f) for f in self.facets)

    def pair_of_facet(self, facet_index: int) -> int:
        for k, (i, j) in enumerate(self.facet_pairs):
            if facet_index in (i, j):
                return k
        raise ValueError("unknown facet index")

    def _check_dim(self, x: Sequence[Scalar]):
        if len(x) != self.dim:
            raise ValueError(f"expected vector of length {self.dim}, got {len(x)}")

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, x: Sequence[Scalar]) -> Scalar:
        self._check_dim(x)
        if self.is_euclidean:
            return math.sqrt(float(sum(c * c for c in x)))
        if self.kind == "lq":
            qf = float(self.q)
            return sum(abs(float(c)) ** qf for c in x) ** (1.0 / qf)
        return max(numeric.dot(f, x) for f in self.facets)

    def _argmax_facets(self, x: Sequence[Scalar], ctx: ScalarContext):
        values = [numeric.dot(f, x) for f in self.facets]
        top = max(values)
        if ctx.is_exact:
            return [i for i, v in enumerate(values) if v == top], top
        scale = max(1.0, abs(float(top)))
        return [i for i, v in enumerate(values) if float(top - v) <= ctx.tolerance * scale], top

    def _default_ctx(self, x: Sequence[Scalar]) -> ScalarContext:
        if self.exact_capable and all_rational(x):
            return EXACT_CTX
        return FLOAT_CTX

    def one_sided_derivative(self, x: Sequence[Scalar], y: Sequence[Scalar],
                             side: str = PLUS, ctx: Optional[ScalarContext] = None) -> Scalar:
        """One-sided directional derivative of the norm at x along y.

        Both limits exist for every norm; they differ only at non-smooth x.
        The identity psi_minus(x; y) == -psi_plus(x; -y) is used for the
        minus side.
        """
        self._check_dim(x)
        self._check_dim(y)
        if all(c == 0 for c in x):
            raise ValueError("directional derivative of a norm requires x != 0")
        if side not in (PLUS, MINUS):
            raise ValueError(f"side must be {PLUS!r} or {MINUS!r}")
        if side == MINUS:
            return -self.one_sided_derivative(x, tuple(-c for c in y), PLUS, ctx)
        if self.is_euclidean:
            return float(numeric.dot(x, y)) / self.evaluate(x)
        if self.kind == "lq":
            f = self._lq_support(x)
            return float(numeric.dot(f, y))
        if ctx is None:
            ctx = self._default_ctx(x)
        active, _ = self._argmax_facets(x, ctx)
        return max(numeric.dot(self.facets[i], y) for i in active)

    # -- support functionals --------------------------------------------------

    def _lq_support(self, x: Sequence[Scalar]) -> VectorT:
        qf = float(self.q)
        n = self.evaluate(x)
        return tuple(math.copysign(abs(float(c)) ** (qf - 1.0), float(c)) / n ** (qf - 1.0)
                     if c != 0 else 0.0 for c in x)

    def support_functional(self, x: Sequence[Scalar],
                           ctx: Optional[ScalarContext] = None) -> Optional[VectorT]:
        """The unique covector f with f(x) = ||x|| and |f| <= 1 in the dual ball.

        Returns None when the norm is not smooth at x (for polyhedral norms:
        the maximizing facet is not unique).  x = 0 is a hard error.
        """
        self._check_dim(x)
        if all(c == 0 for c in x):
            raise ValueError("support functional undefined at 0")
        if self.is_euclidean:
            n = self.evaluate(x)
            return tuple(float(c) / n for c in x)
        if self.kind == "lq":
            return self._lq_support(x)
        if ctx is None:
            ctx = self._default_ctx(x)
        active, _ = self._argmax_facets(x, ctx)
        if len(active) != 1:
            return None
        return self.facets[active[0]]

    def is_smooth_at(self, x: Sequence[Scalar], ctx: Optional[ScalarContext] = None) -> bool:
        if not self.is_polyhedral:
            return any(c != 0 for c in x)
        return self.support_functional(x, ctx) is not None

    # -- isometries -----------------------------------------------------------

    def is_isometry(self, m, ctx: Optional[ScalarContext] = None) -> bool:
        """True iff the matrix maps the unit ball onto itself."""
        mat = numeric.as_matrix(m)
        if len(mat) != self.dim or any(len(r) != self.dim for r in mat):
            raise ValueError("matrix dimension mismatch")
        if ctx is None:
            exactable = all(all_rational(r) for r in mat) and (
                not self.is_polyhedral or self.exact_capable)
            ctx = EXACT_CTX if exactable else FLOAT_CTX
        d = numeric.det(mat)
        if ctx.is_zero(d):
            raise ValueError("singular matrix is not an isometry")
        if self.is_euclidean:
            prod = numeric.mat_mul(numeric.transpose(mat), mat)
            ident = numeric.identity(self.dim)
            return all(ctx.is_zero(prod[i][j] - ident[i][j])
                       for i in range(self.dim) for j in range(self.dim))
        if self.kind == "lq":
            return _is_signed_permutation(mat, ctx)
        n = numeric.transpose(numeric.mat_inverse(mat))
        return self._permutes_facets(n, ctx) is not None

    def _permutes_facets(self, n, ctx: ScalarContext):
        """Match each covector image n @ f to a facet; return the permutation or None."""
        perm = []
        used = set()
        scale = max(1.0, float(numeric.abs_max(self.facets)))
        for f in self.facets:
            g = numeric.mat_vec(n, f)
            hit = None
            for j, h in enumerate(self.facets):
                if j in used:
                    continue
                if all(ctx.is_zero(a - b, scale=scale) for a, b in zip(g, h)):
                    hit = j
                    break
            if hit is None:
                return None
            used.add(hit)
            perm.append(hit)
        return tuple(perm)

    def isometry_group(self, ctx: Optional[ScalarContext] = None) -> IsometryGroup:
        """The group of linear isometries.

        Euclidean (and lq with q = 2) is infinite.  lq with q != 2 gives the
        signed permutations.  Polyhedral norms are solved by brute force: a
        linear isometry is determined by where it sends d independent facet
        covectors, so all candidate image tuples are tried and the survivors
        are exactly the maps permuting the facet set.
        """
        if self.is_euclidean:
            return IsometryGroup(False)
        if self.kind == "lq":
            return IsometryGroup(True, _signed_permutations(self.dim))
        if self.dim > ISOMETRY_BRUTE_FORCE_MAX_DIM:
            raise UnsupportedError(
                f"polyhedral isometry search capped at dim {ISOMETRY_BRUTE_FORCE_MAX_DIM}")
        if len(self.facets) > ISOMETRY_BRUTE_FORCE_MAX_FACETS:
            raise UnsupportedError(
                f"polyhedral isometry search capped at {ISOMETRY_BRUTE_FORCE_MAX_FACETS} facets")
        if ctx is None:
            ctx = EXACT_CTX if self.exact_capable else FLOAT_CTX
        base_idx = numeric.independent_subset(self.facets, ctx if ctx.is_exact else FLOAT_CTX)
        if len(base_idx) != self.dim:
            raise ValueError("facet covectors do not span the space")
        f_cols = numeric.transpose(tuple(self.facets[i] for i in base_idx))
        f_inv = numeric.mat_inverse(f_cols)
        found = []
        seen_keys = set()
        for images in itertools.permutations(range(len(self.facets)), self.dim):
            g_cols = numeric.transpose(tuple(self.facets[i] for i in images))
            n = numeric.mat_mul(g_cols, f_inv)
            if ctx.is_zero(numeric.det(n)):
                continue
            if self._permutes_facets(n, ctx) is None:
                continue
            m = numeric.transpose(numeric.mat_inverse(n))
            key = _matrix_key(m, ctx)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            found.append(m)
        found.sort(key=lambda mat: _matrix_key(mat, ctx))
        return IsometryGroup(True, tuple(found))


def _matrix_key(m, ctx: ScalarContext):
    if ctx.is_exact:
        return tuple(tuple(Fraction(x) for x in row) for row in m)
    return tuple(tuple(round(float(x), 7) for x in row) for row in m)


def _is_signed_permutation(mat, ctx: ScalarContext) -> bool:
    d = len(mat)
    cols_hit = set()
    for row in mat:
        nonzero = [j for j, x in enumerate(row) if not ctx.is_zero(x)]
        if len(nonzero) != 1:
            return False
        j = nonzero[0]
        if j in cols_hit or not ctx.is_zero(abs(row[j]) - 1):
            return False
        cols_hit.add(j)
    return len(cols_hit) == d


def _signed_permutations(d: int) -> tuple:
    mats = []
    for perm in itertools.permutations(range(d)):
        for signs in itertools.product((1, -1), repeat=d):
            mats.append(tuple(
                tuple(Fraction(signs[i]) if perm[i] == j else Fraction(0) for j in range(d))
                for i in range(d)))
    return tuple(mats)


def _pair_up_facets(facets, ctx: ScalarContext):
    scale = max(1.0, float(numeric.abs_max(facets)))
    pairs = []
    used = set()
    for i, f in enumerate(facets):
        if i in used:
            continue
        partner = None
        for j in range(i + 1, len(facets)):
            if j in used:
                continue
            if all(ctx.is_zero(a + b, scale=scale) for a, b in zip(f, facets[j])):
                partner = j
                break
        if partner is None:
            raise ValueError("facet covectors must come in antipodal pairs")
        used.update((i, partner))
        pairs.append((i, partner))
    return tuple(pairs)


def polyhedral(facets, label: Optional[str] = None) -> NormSpec:
    """Build a polyhedral norm from facet covectors (antipodal pairs required)."""
    fs = tuple(tuple(f) for f in facets)
    if not fs:
        raise ValueError("at least one facet covector required")
    dim = len(fs[0])
    if any(len(f) != dim for f in fs):
        raise ValueError("facet covectors of mixed dimension")
    ctx = EXACT_CTX if all(all_rational(f) for f in fs) else FLOAT_CTX
    pairs = _pair_up_facets(fs, ctx)
    r, _ = numeric.rank_nullspace(fs, ctx)
    if r != dim:
        raise ValueError("facet covectors must span the space (bounded unit ball)")
    return NormSpec(dim=dim, kind="polyhedral", facets=fs, facet_pairs=pairs, label=label)


def euclidean(dim: int) -> NormSpec:
    return NormSpec(dim=dim, kind="euclidean", label=f"l2({dim})")


def linf(dim: int) -> NormSpec:
    facets = []
    for i in range(dim):
        for s in (1, -1):
            facets.append(tuple(Fraction(s) if j == i else Fraction(0) for j in range(dim)))
    return polyhedral(facets, label=f"linf({dim})")


def l1(dim: int) -> NormSpec:
    facets = [tuple(Fraction(s) for s in signs)
              for signs in itertools.product((1, -1), repeat=dim)]
    return polyhedral(facets, label=f"l1({dim})")


def lq(dim: int, q) -> NormSpec:
    qv = q if isinstance(q, float) and math.isinf(q) else Fraction(q)
    if qv == math.inf:
        return linf(dim)
    if qv < 1:
        raise ValueError("lq norms require q >= 1")
    if qv == 1:
        return l1(dim)
    return NormSpec(dim=dim, kind="lq", q=qv, label=f"l{qv}({dim})")


def from_ball_vertices(vertices, label: Optional[str] = None) -> NormSpec:
    """Convert unit-ball extreme points to facet covectors (dim <= 3).

    Brute-force hull: every d-subset of vertices that spans a supporting
    hyperplane f(x) = 1 contributes the facet covector f.
    """
    pts = tuple(tuple(p) for p in vertices)
    if not pts:
        raise ValueError("no vertices given")
    dim = len(pts[0])
    if dim > 3:
        raise UnsupportedError("vertex-to-facet conversion capped at dim 3")
    exact = all(all_rational(p) for p in pts)
    ctx = EXACT_CTX if exact else FLOAT_CTX
    tol_scale = max(1.0, float(numeric.abs_max(pts)))
    facets = []
    for subset in itertools.combinations(pts, dim):
        mat = numeric.as_matrix(subset)
        if ctx.is_zero(numeric.det(mat), scale=tol_scale ** dim):
            continue
        inv = numeric.mat_inverse(mat)
        one = Fraction(1) if exact else 1.0
        f = numeric.mat_vec(inv, (one,) * dim)
        if all(numeric.dot(f, p) <= 1 + (0 if ctx.is_exact else ctx.tolerance * tol_scale)
               for p in pts):
            if not any(all(ctx.is_zero(a - b, scale=tol_scale) for a, b in zip(f, g))
                       for g in facets):
                facets.append(tuple(f))
    return polyhedral(facets, label=label)


_SQRT3 = math.sqrt(3.0)


def hexagonal_prism() -> NormSpec:
    """Unit ball a hexagonal prism: regular hexagon cross-section
    (circumradius 1, vertices on the x-axis) extruded to |z| <= 1."""
    side = [
        (1.0, 1.0 / _SQRT3, 0.0),
        (0.0, 2.0 / _SQRT3, 0.0),
        (-1.0, 1.0 / _SQRT3, 0.0),
    ]
    facets = []
    for f in side:
        facets.append(f)
        facets.append(tuple(-c for c in f))
    facets.append((0.0, 0.0, 1.0))
    facets.append((0.0, 0.0, -1.0))
    return polyhedral(facets, label="hexprism(3)")


BUILTIN_NORMS = {
    "linf2": lambda: linf(2),
    "linf3": lambda: linf(3),
    "l12": lambda: l1(2),
    "l13": lambda: l1(3),
    "l22": lambda: euclidean(2),
    "l23": lambda: euclidean(3),
    "hexprism3": hexagonal_prism,
}


def builtin_norm(name: str) -> NormSpec:
    try:
        return BUILTIN_NORMS[name]()
    except KeyError:
        raise ValueError(f"unknown builtin norm {name!r}") from None
