"""Bar-joint frameworks and their infinitesimal rigidity analysis.

A framework is a simple graph, an injective placement of its vertices in R^d,
and a norm.  The rigidity matrix has one row per edge whose nonzero blocks are
the support functional of the (normalized) edge direction at one endpoint and
its negative at the other; with that normalization the matrix is exactly the
differential of the edge-length map.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import numeric, sparsity
from .graphs import Graph, make_graph
from .norms import NormSpec
from .scalars import (
    EXACT_CTX,
    FLOAT_CTX,
    ScalarContext,
    UnsupportedError,
    all_rational,
)

VERDICT_ISOSTATIC = "isostatic"
VERDICT_RIGID_REDUNDANT = "rigid_redundant"
VERDICT_FLEXIBLE = "flexible"
VERDICT_NOT_WELL_POSITIONED = "not_well_positioned"

FLEX_FULL = "full"
FLEX_TRIVIAL = "trivial"


class NotWellPositionedError(ValueError):
    def __init__(self, bad_edges):
        self.bad_edges = tuple(bad_edges)
        super().__init__(f"framework not well-positioned; bad edges: {self.bad_edges}")


@dataclass
class Framework:
    graph: Graph
    points: dict
    norm: NormSpec
    ctx: ScalarContext

    @property
    def dim(self) -> int:
        return self.norm.dim

    def point(self, v):
        return self.points[v]

    def edge_vector(self, u, v):
        pu, pv = self.points[u], self.points[v]
        return tuple(a - b for a, b in zip(pu, pv))

    def translated(self, offset) -> "Framework":
        pts = {v: tuple(a + b for a, b in zip(p, offset)) for v, p in self.points.items()}
        return Framework(self.graph, pts, self.norm, self.ctx)

    def transformed(self, matrix) -> "Framework":
        pts = {v: numeric.mat_vec(matrix, p) for v, p in self.points.items()}
        return Framework(self.graph, pts, self.norm, self.ctx)

    def as_float(self) -> "Framework":
        pts = {v: tuple(float(c) for c in p) for v, p in self.points.items()}
        ctx = self.ctx if not self.ctx.is_exact else FLOAT_CTX
        return Framework(self.graph, pts, self.norm, ctx)


def make_framework(graph_or_vertices, points: dict, norm: NormSpec,
                   ctx: Optional[ScalarContext] = None,
                   edges=None) -> Framework:
    """Build and validate a framework.

    The backend defaults to exact when the norm and all coordinates are
    rational, float otherwise.  Placements must be injective (exactly, or
    separated beyond tolerance under the float backend).
    """
    if isinstance(graph_or_vertices, Graph):
        graph = graph_or_vertices
    else:
        graph = make_graph(graph_or_vertices, edges or ())
    missing = [v for v in graph.vertices if v not in points]
    if missing:
        raise ValueError(f"missing placements for {missing}")
    pts = {v: tuple(points[v]) for v in graph.vertices}
    for v, p in pts.items():
        if len(p) != norm.dim:
            raise ValueError(f"point for {v!r} has dimension {len(p)}, norm has {norm.dim}")
    data_rational = all(all_rational(p) for p in pts.values())
    if ctx is None:
        ctx = EXACT_CTX if (norm.exact_capable and data_rational) else FLOAT_CTX
    elif ctx.is_exact and not (norm.exact_capable and data_rational):
        raise ValueError("exact backend requires rational facet data and placements")
    vs = graph.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            diff = tuple(a - b for a, b in zip(pts[vs[i]], pts[vs[j]]))
            if all(ctx.is_zero(c) for c in diff):
                raise ValueError(f"placement not injective: {vs[i]!r} and {vs[j]!r} coincide")
    return Framework(graph, pts, norm, ctx)


def well_positioned(fw: Framework):
    """(ok, bad_edges): an edge is bad when the norm is not smooth along it."""
    bad = []
    for u, v in fw.graph.edges:
        if fw.norm.support_functional(fw.edge_vector(u, v), fw.ctx) is None:
            bad.append((u, v))
    return (not bad, bad)


def rigidity_map(fw: Framework):
    """Edge lengths in canonical edge order."""
    return tuple(fw.norm.evaluate(fw.edge_vector(u, v)) for u, v in fw.graph.edges)


@dataclass
class RigidityMatrix:
    matrix: numeric.LabeledMatrix
    support: dict = field(default_factory=dict)

    @property
    def entries(self):
        return self.matrix.entries

    @property
    def edge_order(self):
        return self.matrix.row_labels

    @property
    def vertex_order(self):
        seen = dict.fromkeys(v for v, _ in self.matrix.col_labels)
        return tuple(seen)


def rigidity_matrix(fw: Framework) -> RigidityMatrix:
    """|E| x (dim |V|) matrix of support-functional blocks.

    Row for canonical edge (u, v): the support functional of p_u - p_v in the
    u block, its negative in the v block.  Raises NotWellPositionedError when
    any edge direction is a non-smooth point of the norm.
    """
    ok, bad = well_positioned(fw)
    if not ok:
        raise NotWellPositionedError(bad)
    d = fw.dim
    zero = Fraction(0) if fw.ctx.is_exact else 0.0
    nv = fw.graph.n
    rows = []
    support = {}
    for (u, v) in fw.graph.edges:
        phi = fw.norm.support_functional(fw.edge_vector(u, v), fw.ctx)
        support[(u, v)] = phi
        row = [zero] * (d * nv)
        iu, iv = fw.graph.index(u), fw.graph.index(v)
        for k in range(d):
            row[d * iu + k] = phi[k]
            row[d * iv + k] = -phi[k]
        rows.append(tuple(row))
    col_labels = tuple((v, k) for v in fw.graph.vertices for k in range(d))
    lm = numeric.LabeledMatrix(tuple(rows), row_labels=fw.graph.edges, col_labels=col_labels)
    return RigidityMatrix(lm, support)


@dataclass(frozen=True)
class FlexSpace:
    basis: tuple
    kind: str

    @property
    def dimension(self) -> int:
        return len(self.basis)


def flex_space(fw: Framework) -> FlexSpace:
    """Kernel of the rigidity matrix: all infinitesimal flexes."""
    rm = rigidity_matrix(fw)
    _, kernel = numeric.rank_nullspace(rm.matrix, fw.ctx)
    return FlexSpace(kernel, FLEX_FULL)


def _translation_fields(fw: Framework):
    d, nv = fw.dim, fw.graph.n
    one = Fraction(1) if fw.ctx.is_exact else 1.0
    zero = Fraction(0) if fw.ctx.is_exact else 0.0
    fields = []
    for k in range(d):
        vec = [zero] * (d * nv)
        for i in range(nv):
            vec[d * i + k] = one
        fields.append(tuple(vec))
    return fields


def _rotation_fields(fw: Framework):
    d = fw.dim
    fields = []
    for i in range(d):
        for j in range(i + 1, d):
            vec = []
            for v in fw.graph.vertices:
                p = fw.points[v]
                field_v = [0 * c for c in p]
                field_v[i] = -p[j]
                field_v[j] = p[i]
                vec.extend(field_v)
            fields.append(tuple(vec))
    return fields


def trivial_flex_space(fw: Framework) -> FlexSpace:
    """Derivatives of rigid motions evaluated at the placement.

    Finite isometry group: translations only (dimension d).  Euclidean:
    translations plus infinitesimal rotations; degenerate placements are
    handled by taking an independent subset of the generators.
    """
    if fw.norm.has_finite_isometries:
        return FlexSpace(tuple(_translation_fields(fw)), FLEX_TRIVIAL)
    if not fw.norm.is_euclidean:
        raise UnsupportedError("trivial flexes for infinite non-Euclidean isometry groups")
    gens = _translation_fields(fw) + _rotation_fields(fw)
    keep = numeric.independent_subset(gens, fw.ctx)
    return FlexSpace(tuple(gens[i] for i in keep), FLEX_TRIVIAL)


@dataclass
class RigidityVerdict:
    verdict: str
    rank: int
    dim_flex: int
    dim_trivial: int
    maxwell_report: list
    bad_edges: tuple = ()

    @property
    def is_isostatic(self) -> bool:
        return self.verdict == VERDICT_ISOSTATIC

    @property
    def is_rigid(self) -> bool:
        return self.verdict in (VERDICT_ISOSTATIC, VERDICT_RIGID_REDUNDANT)


def _maxwell_report(fw: Framework, verdict: str, rank: int, dim_trivial: int) -> list:
    d, nv, ne = fw.dim, fw.graph.n, fw.graph.m
    report = []
    rigid = verdict in (VERDICT_ISOSTATIC, VERDICT_RIGID_REDUNDANT)
    report.append({
        "check": "rigid-count",
        "statement": "|E| >= dim|V| - dim(trivial)",
        "applies": rigid,
        "lhs": ne,
        "rhs": d * nv - dim_trivial,
        "passed": (ne >= d * nv - dim_trivial) if rigid else None,
    })
    report.append({
        "check": "isostatic-count",
        "statement": "|E| = dim|V| - dim(trivial)",
        "applies": verdict == VERDICT_ISOSTATIC,
        "lhs": ne,
        "rhs": d * nv - dim_trivial,
        "passed": (ne == d * nv - dim_trivial) if verdict == VERDICT_ISOSTATIC else None,
    })
    subgraph_entry = {
        "check": "subgraph-counts",
        "statement": "|E(H)| <= dim|V(H)| - dim(trivial(H)) for all subgraphs",
        "applies": verdict == VERDICT_ISOSTATIC,
        "passed": None,
        "method": None,
    }
    if verdict == VERDICT_ISOSTATIC:
        if fw.norm.has_finite_isometries:
            params = sparsity.SparsityParams(d, d)
            tight = sparsity.is_tight(fw.graph, params)
            subgraph_entry["method"] = f"pebble-game ({d},{d})"
            subgraph_entry["passed"] = tight
        elif d == 2:
            params = sparsity.SparsityParams(2, 3)
            if fw.graph.n >= 2:
                subgraph_entry["method"] = "pebble-game (2,3)"
                subgraph_entry["passed"] = sparsity.is_tight(fw.graph, params)
            else:
                subgraph_entry["method"] = "skipped (single vertex)"
        else:
            subgraph_entry["method"] = "skipped (Euclidean dim >= 3)"
    report.append(subgraph_entry)
    return report


def classify_rigidity(fw: Framework) -> RigidityVerdict:
    ok, bad = well_positioned(fw)
    if not ok:
        return RigidityVerdict(VERDICT_NOT_WELL_POSITIONED, 0, 0, 0, [], tuple(bad))
    rm = rigidity_matrix(fw)
    rk, kernel = numeric.rank_nullspace(rm.matrix, fw.ctx)
    trivial = trivial_flex_space(fw)
    dim_flex = len(kernel)
    dim_trivial = trivial.dimension
    rows_indep = rk == fw.graph.m
    if dim_flex == dim_trivial:
        verdict = VERDICT_ISOSTATIC if rows_indep else VERDICT_RIGID_REDUNDANT
    else:
        verdict = VERDICT_FLEXIBLE
    report = _maxwell_report(fw, verdict, rk, dim_trivial)
    return RigidityVerdict(verdict, rk, dim_flex, dim_trivial, report)


def finite_difference_check(fw: Framework, trials: int = 20, step: float = 1e-6,
                            seed: int = 0) -> float:
    """Compare R(G,p) u against central differences of the edge-length map.

    Returns the largest relative deviation over random directions u.  Runs in
    float regardless of the framework's backend.
    """
    ffw = fw.as_float()
    ok, _ = well_positioned(ffw)
    if not ok:
        raise NotWellPositionedError(well_positioned(ffw)[1])
    rm = rigidity_matrix(ffw)
    rng = random.Random(seed)
    d, nv = ffw.dim, ffw.graph.n
    worst = 0.0
    order = ffw.graph.vertices
    for _ in range(trials):
        u = [rng.uniform(-1.0, 1.0) for _ in range(d * nv)]
        predicted = numeric.mat_vec(rm.entries, u)
        plus = {v: tuple(c + step * u[d * i + k] for k, c in enumerate(ffw.points[v]))
                for i, v in enumerate(order)}
        minus = {v: tuple(c - step * u[d * i + k] for k, c in enumerate(ffw.points[v]))
                 for i, v in enumerate(order)}
        for e_idx, (a, b) in enumerate(ffw.graph.edges):
            lp = ffw.norm.evaluate(tuple(x - y for x, y in zip(plus[a], plus[b])))
            lm = ffw.norm.evaluate(tuple(x - y for x, y in zip(minus[a], minus[b])))
            fd = (lp - lm) / (2.0 * step)
            err = abs(float(predicted[e_idx]) - fd) / max(1.0, abs(fd))
            if err > worst:
                worst = err
    return worst
