"""Group actions on frameworks and the symmetry-extended counting rules.

A group is given extensionally: element names, a multiplication table, vertex
permutations (theta) and isometry matrices (tau).  For norms with finitely
many linear isometries the trivial-flex subrepresentation acts like tau on the
translation space, so its character at gamma is tr(tau(gamma)); the counting
rules below are all consequences of the resulting character identity
|E_gamma| = tr(tau(gamma)) (|V_gamma| - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import numeric
from .framework import Framework, rigidity_matrix
from .graphs import Graph
from .scalars import FLOAT_CTX, ScalarContext, UnsupportedError

KIND_IDENTITY = "identity"
KIND_REFLECTION = "reflection"
KIND_INVERSION = "inversion"
KIND_ROTATION = "rotation"
KIND_IMPROPER = "improper_rotation"

MAX_OPERATION_ORDER = 1000


@dataclass(frozen=True)
class GroupAction:
    elements: tuple
    table: dict
    theta: dict
    tau: dict
    name: Optional[str] = None

    def compose(self, a, b):
        return self.table[(a, b)]

    @property
    def identity(self):
        for e in self.elements:
            if all(self.table[(e, x)] == x and self.table[(x, e)] == x for x in self.elements):
                return e
        raise ValueError("multiplication table has no identity")

    def inverse(self, g):
        e = self.identity
        for h in self.elements:
            if self.table[(g, h)] == e:
                return h
        raise ValueError(f"element {g!r} has no inverse")

    def apply_vertex(self, g, v):
        return self.theta[g][v]

    def apply_edge(self, g, edge, graph: Graph):
        u, v = edge
        return graph.canonical_edge(self.theta[g][u], self.theta[g][v])

    def order_of(self, g) -> int:
        e = self.identity
        x = g
        n = 1
        while x != e:
            x = self.table[(g, x)]
            n += 1
            if n > len(self.elements):
                raise ValueError("table is not a group")
        return n

    def conjugacy_classes(self):
        classes = []
        seen = set()
        for a in self.elements:
            if a in seen:
                continue
            cls = set()
            for g in self.elements:
                cls.add(self.table[(self.table[(g, a)], self.inverse(g))])
            seen |= cls
            classes.append(tuple(x for x in self.elements if x in cls))
        return classes


def validate_group(action: GroupAction, dim: int, ctx: ScalarContext = FLOAT_CTX) -> list:
    """Structural checks: group axioms plus tau being a matrix homomorphism."""
    problems = []
    els = action.elements
    for a in els:
        for b in els:
            if (a, b) not in action.table or action.table[(a, b)] not in els:
                problems.append({"kind": "table", "detail": f"({a},{b}) missing or out of range"})
    if problems:
        return problems
    try:
        e = action.identity
    except ValueError as exc:
        return [{"kind": "table", "detail": str(exc)}]
    for g in els:
        try:
            action.inverse(g)
        except ValueError:
            problems.append({"kind": "table", "detail": f"no inverse for {g}"})
    for a in els:
        for b in els:
            for c in els:
                if action.table[(action.table[(a, b)], c)] != action.table[(a, action.table[(b, c)])]:
                    problems.append({"kind": "table",
                                     "detail": f"associativity fails at ({a},{b},{c})"})
                    return problems
    scale = 1.0
    for g in els:
        mat = numeric.as_matrix(action.tau[g])
        if len(mat) != dim or any(len(r) != dim for r in mat):
            problems.append({"kind": "tau", "element": g, "detail": "dimension mismatch"})
    if problems:
        return problems
    ident = numeric.identity(dim)
    tau_e = numeric.as_matrix(action.tau[e])
    if not _matrices_close(tau_e, ident, ctx, scale):
        problems.append({"kind": "tau", "element": e, "detail": "tau(identity) != I"})
    for a in els:
        for b in els:
            lhs = numeric.mat_mul(numeric.as_matrix(action.tau[a]), numeric.as_matrix(action.tau[b]))
            rhs = numeric.as_matrix(action.tau[action.table[(a, b)]])
            if not _matrices_close(lhs, rhs, ctx, scale):
                problems.append({"kind": "tau", "element": f"{a}*{b}",
                                 "detail": "tau is not a homomorphism"})
                return problems
    return problems


def check_theta(action: GroupAction, graph: Graph) -> list:
    """theta must permute vertices, respect the table, and map edges to edges."""
    problems = []
    vs = set(graph.vertices)
    for g in action.elements:
        perm = action.theta.get(g)
        if perm is None:
            problems.append({"kind": "theta", "element": g, "detail": "missing permutation"})
            continue
        if set(perm.keys()) != vs or set(perm.values()) != vs:
            problems.append({"kind": "theta", "element": g, "detail": "not a vertex permutation"})
    if problems:
        return problems
    for a in action.elements:
        for b in action.elements:
            c = action.table[(a, b)]
            for v in graph.vertices:
                if action.theta[a][action.theta[b][v]] != action.theta[c][v]:
                    problems.append({"kind": "theta", "element": f"{a}*{b}",
                                     "detail": "theta is not a homomorphism"})
                    return problems
    edge_set = set(graph.edges)
    for g in action.elements:
        for e in graph.edges:
            if action.apply_edge(g, e, graph) not in edge_set:
                problems.append({"kind": "theta", "element": g,
                                 "detail": f"edge {e} not mapped to an edge"})
    return problems


def _matrices_close(a, b, ctx: ScalarContext, scale=1.0) -> bool:
    return all(ctx.is_zero(x - y, scale=scale) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def fixed_elements(graph: Graph, action: GroupAction, gamma):
    """(V_gamma, E_gamma): vertices and edges mapped to themselves.

    A fixed edge either has both endpoints fixed or its endpoints swapped.
    """
    if gamma not in action.theta:
        raise ValueError(f"unknown element {gamma!r}")
    perm = action.theta[gamma]
    fixed_v = {v for v in graph.vertices if perm[v] == v}
    fixed_e = {e for e in graph.edges if {perm[e[0]], perm[e[1]]} == {e[0], e[1]}}
    return fixed_v, fixed_e


@dataclass(frozen=True)
class SymmetryOpClass:
    kind: str
    order: int
    angle_num: int = 0
    angle_den: int = 1

    def __str__(self):
        if self.kind == KIND_ROTATION:
            return f"C{self.angle_den}" + (f"^{self.angle_num}" if self.angle_num != 1 else "")
        if self.kind == KIND_IMPROPER:
            return f"S{self.angle_den}" + (f"^{self.angle_num}" if self.angle_num != 1 else "")
        return {KIND_IDENTITY: "E", KIND_REFLECTION: "s", KIND_INVERSION: "i"}[self.kind]

    @property
    def cos_angle(self) -> float:
        return math.cos(2.0 * math.pi * self.angle_num / self.angle_den)

    def expected_trace(self, dim: int) -> float:
        if self.kind == KIND_IDENTITY:
            return float(dim)
        if self.kind == KIND_REFLECTION:
            return float(dim - 2)
        if self.kind == KIND_INVERSION:
            return float(-dim)
        if self.kind == KIND_ROTATION:
            return 2.0 * self.cos_angle + (dim - 2)
        return 2.0 * self.cos_angle - (dim - 2)


def _matrix_order(mat, ctx: ScalarContext) -> int:
    d = len(mat)
    ident = numeric.identity(d)
    power = mat
    for n in range(1, MAX_OPERATION_ORDER + 1):
        if _matrices_close(power, ident, ctx):
            return n
        power = numeric.mat_mul(power, mat)
    raise ValueError(f"matrix has order above {MAX_OPERATION_ORDER}; not a finite-order isometry")


def _angle_fraction(cos_value: float, order: int):
    """Reduced k/n with cos(2 pi k / order) = cos_value, canonical k <= order/2."""
    for j in range(0, order + 1):
        if abs(math.cos(2.0 * math.pi * j / order) - cos_value) <= 1e-6:
            g = math.gcd(j, order) if j else order
            num, den = (j // g, order // g) if j else (0, 1)
            if den > 1 and num > den // 2:
                num = den - num
            return num, den
    raise ValueError("trace inconsistent with matrix order")


def classify_operation(mat, dim: int, ctx: ScalarContext = FLOAT_CTX) -> SymmetryOpClass:
    """Decide the operation class from determinant, trace and order.

    In dimension 2 the map -I is the half-turn rotation, not an inversion
    (there is no separate inversion class in the plane).
    """
    m = numeric.as_matrix(mat)
    if len(m) != dim or any(len(r) != dim for r in m):
        raise ValueError("matrix dimension mismatch")
    order = _matrix_order(m, ctx)
    ident = numeric.identity(dim)
    if _matrices_close(m, ident, ctx):
        return SymmetryOpClass(KIND_IDENTITY, 1)
    d = float(numeric.det(m))
    trace = float(sum(m[i][i] for i in range(dim)))
    neg_ident = tuple(tuple(-x for x in row) for row in ident)
    if dim == 2:
        if d > 0:
            num, den = _angle_fraction(trace / 2.0, order)
            return SymmetryOpClass(KIND_ROTATION, order, num, den)
        return SymmetryOpClass(KIND_REFLECTION, order)
    if dim == 3:
        if _matrices_close(m, neg_ident, ctx):
            return SymmetryOpClass(KIND_INVERSION, 2)
        if d > 0:
            num, den = _angle_fraction((trace - 1.0) / 2.0, order)
            return SymmetryOpClass(KIND_ROTATION, order, num, den)
        if order == 2:
            return SymmetryOpClass(KIND_REFLECTION, 2)
        num, den = _angle_fraction((trace + 1.0) / 2.0, order)
        return SymmetryOpClass(KIND_IMPROPER, order, num, den)
    raise UnsupportedError("operation classification implemented for dim 2 and 3")


@dataclass
class ValidationResult:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_symmetric_framework(fw: Framework, action: GroupAction) -> ValidationResult:
    """Check tau(gamma) p(v) = p(gamma v) for all gamma, v, and that every
    tau(gamma) is an isometry of the framework's norm."""
    violations = []
    violations.extend(validate_group(action, fw.dim, fw.ctx))
    violations.extend(check_theta(action, fw.graph))
    if violations:
        return ValidationResult(False, violations)
    for g in action.elements:
        try:
            if not fw.norm.is_isometry(action.tau[g], fw.ctx):
                violations.append({"kind": "isometry", "element": g,
                                   "detail": "tau is not an isometry of the norm"})
                continue
        except ValueError as exc:
            violations.append({"kind": "isometry", "element": g, "detail": str(exc)})
            continue
        mat = numeric.as_matrix(action.tau[g])
        for v in fw.graph.vertices:
            image = numeric.mat_vec(mat, fw.points[v])
            target = fw.points[action.theta[g][v]]
            if not all(fw.ctx.is_zero(a - b) for a, b in zip(image, target)):
                violations.append({"kind": "equivariance", "element": g, "vertex": v,
                                   "detail": f"tau({g}) p({v}) != p({g}{v})"})
    return ValidationResult(not violations, violations)


def _require_finite(fw: Framework):
    if not fw.norm.has_finite_isometries:
        raise UnsupportedError(
            "symmetry-extended counts need a norm with finitely many linear isometries")


@dataclass(frozen=True)
class CharacterRow:
    element: str
    op: SymmetryOpClass
    fixed_vertices: int
    fixed_edges: int
    tau_trace: float
    chi_edge: int
    chi_tensor: float
    chi_trivial: float
    formula_ok: bool


def character_table(fw: Framework, action: GroupAction) -> list:
    """Per-element characters of P_E, tau x P_V and the trivial-flex
    subrepresentation, checked against the classified operation's formula."""
    _require_finite(fw)
    rows = []
    for g in action.elements:
        mat = numeric.as_matrix(action.tau[g])
        op = classify_operation(mat, fw.dim, fw.ctx)
        vg, eg = fixed_elements(fw.graph, action, g)
        trace = float(sum(mat[i][i] for i in range(fw.dim)))
        expected = op.expected_trace(fw.dim)
        rows.append(CharacterRow(
            element=g,
            op=op,
            fixed_vertices=len(vg),
            fixed_edges=len(eg),
            tau_trace=trace,
            chi_edge=len(eg),
            chi_tensor=trace * len(vg),
            chi_trivial=trace,
            formula_ok=abs(trace - expected) <= 1e-6,
        ))
    return rows


def _rotation_rules(d: int, den: int):
    if d == 2:
        if den == 2:
            return [("dichotomy", "(|V|,|E|) is (0,2) or (1,0)",
                     lambda V, E: (V, E) in ((0, 2), (1, 0)))]
        if den == 3:
            return [("dichotomy", "(|V|,|E|) is (0,1) or (1,0)",
                     lambda V, E: (V, E) in ((0, 1), (1, 0)))]
        if den == 4:
            return [("four-fold", "|V| <= 1 and |E| = 0",
                     lambda V, E: V <= 1 and E == 0)]
        return [("single-fixed-vertex", "|V| = 1 and |E| = 0",
                 lambda V, E: (V, E) == (1, 0))]
    if d == 3:
        if den == 2:
            return [("dichotomy", "(|V|,|E|) is (0,1) or (1,0)",
                     lambda V, E: (V, E) in ((0, 1), (1, 0)))]
        if den == 3:
            return [("no-fixed-edges", "|E| = 0", lambda V, E: E == 0)]
        return [("single-fixed-vertex", "|V| = 1 and |E| = 0",
                 lambda V, E: (V, E) == (1, 0))]
    return []


def _improper_rules(den: int):
    if den == 3:
        return [("single-fixed-vertex", "|V| = 1 and |E| = 0",
                 lambda V, E: (V, E) == (1, 0))]
    if den == 4:
        return [("dichotomy", "(|V|,|E|) is (0,1) or (1,0)",
                 lambda V, E: (V, E) in ((0, 1), (1, 0)))]
    if den == 6:
        return [("no-fixed-edges", "|E| = 0", lambda V, E: E == 0)]
    return [("single-fixed-vertex", "|V| = 1 and |E| = 0",
             lambda V, E: (V, E) == (1, 0))]


def _refinement_rules(op: SymmetryOpClass, d: int):
    if op.kind == KIND_REFLECTION:
        if d == 2:
            return [("no-fixed-edges", "|E| = 0", lambda V, E: E == 0)]
        if d == 3:
            return [("fixed-vertex-exists", "|V| >= 1", lambda V, E: V >= 1),
                    ("vertex-edge-link", "|V| = 1 iff |E| = 0",
                     lambda V, E: (V == 1) == (E == 0))]
        return []
    if op.kind == KIND_INVERSION:
        return [("dichotomy", f"(|V|,|E|) is (0,{d}) or (1,0)",
                 lambda V, E, d=d: (V, E) in ((0, d), (1, 0)))]
    if op.kind == KIND_ROTATION:
        return _rotation_rules(d, op.angle_den)
    if op.kind == KIND_IMPROPER and d == 3:
        return _improper_rules(op.angle_den)
    return []


@dataclass
class ElementCountCheck:
    element: str
    op: SymmetryOpClass
    fixed_vertices: int
    fixed_edges: int
    checks: list

    @property
    def all_passed(self) -> bool:
        return all(c["passed"] for c in self.checks)


@dataclass
class CountReport:
    records: list

    @property
    def all_passed(self) -> bool:
        return all(r.all_passed for r in self.records)


def symmetric_count_check(fw: Framework, action: GroupAction) -> CountReport:
    """Necessary fixed-element counts for isostatic frameworks.

    Every element gets the main identity |E_g| = tr(tau(g)) (|V_g| - 1); the
    classified operation adds its dichotomy/refinement.  Any failure rules out
    isostaticity.
    """
    _require_finite(fw)
    d = fw.dim
    records = []
    for g in action.elements:
        mat = numeric.as_matrix(action.tau[g])
        op = classify_operation(mat, d, fw.ctx)
        vg, eg = fixed_elements(fw.graph, action, g)
        V, E = len(vg), len(eg)
        trace = float(sum(mat[i][i] for i in range(d)))
        checks = [{
            "id": "count-identity",
            "description": "|E_g| = tr(tau(g)) (|V_g| - 1)",
            "expected": trace * (V - 1),
            "actual": E,
            "passed": abs(E - trace * (V - 1)) <= 1e-6,
        }]
        if op.kind != KIND_IDENTITY:
            for rule_id, desc, pred in _refinement_rules(op, d):
                checks.append({
                    "id": f"{op}:{rule_id}",
                    "description": desc,
                    "expected": desc,
                    "actual": (V, E),
                    "passed": bool(pred(V, E)),
                })
        records.append(ElementCountCheck(g, op, V, E, checks))
    return CountReport(records)


def character_equation_check(fw: Framework, action: GroupAction) -> CountReport:
    """Componentwise check of chi(P_E) = chi(tau x P_V) - chi((tau x P_V)^T),
    identity element included (there it reads |E| = dim|V| - dim)."""
    _require_finite(fw)
    records = []
    for row in character_table(fw, action):
        lhs = row.chi_edge
        rhs = row.chi_tensor - row.chi_trivial
        records.append(ElementCountCheck(row.element, row.op, row.fixed_vertices,
                                         row.fixed_edges, [{
            "id": "character-equation",
            "description": "chi(P_E) = chi(tau x P_V) - chi(trivial-flex part)",
            "expected": rhs,
            "actual": lhs,
            "passed": abs(lhs - rhs) <= 1e-6,
        }]))
    return CountReport(records)


def _vertex_perm_matrix(action: GroupAction, graph: Graph, g, exact: bool):
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    n = graph.n
    mat = [[zero] * n for _ in range(n)]
    for v in graph.vertices:
        mat[graph.index(action.theta[g][v])][graph.index(v)] = one
    return tuple(tuple(row) for row in mat)


def _edge_perm_matrix(action: GroupAction, graph: Graph, g, exact: bool):
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    m = graph.m
    idx = {e: i for i, e in enumerate(graph.edges)}
    mat = [[zero] * m for _ in range(m)]
    for e in graph.edges:
        mat[idx[action.apply_edge(g, e, graph)]][idx[e]] = one
    return tuple(tuple(row) for row in mat)


def tensor_representation_matrix(action: GroupAction, graph: Graph, g, dim: int, exact: bool):
    """(tau x P_V)(g) as a (dim n) x (dim n) matrix."""
    tau = numeric.as_matrix(action.tau[g])
    zero = Fraction(0) if exact else 0.0
    n = graph.n
    big = [[zero] * (dim * n) for _ in range(dim * n)]
    for v in graph.vertices:
        i, j = graph.index(action.theta[g][v]), graph.index(v)
        for r in range(dim):
            for c in range(dim):
                big[dim * i + r][dim * j + c] = tau[r][c]
    return tuple(tuple(row) for row in big)


def intertwining_check(fw: Framework, action: GroupAction):
    """Largest entry of R (tau x P_V)(g) - P_E(g) R over all g.

    Zero exactly under the exact backend for a validated symmetric framework.
    """
    rm = rigidity_matrix(fw)
    exact = fw.ctx.is_exact
    worst = Fraction(0) if exact else 0.0
    for g in action.elements:
        a = tensor_representation_matrix(action, fw.graph, g, fw.dim, exact)
        b = _edge_perm_matrix(action, fw.graph, g, exact)
        lhs = numeric.mat_mul(rm.entries, a)
        rhs = numeric.mat_mul(b, rm.entries)
        resid = numeric.abs_max(numeric.mat_sub(lhs, rhs))
        if resid > worst:
            worst = resid
    return worst


def cyclic_subaction(action: GroupAction, g) -> GroupAction:
    """The restriction of the action to the cyclic subgroup generated by g."""
    e = action.identity
    elements = [e]
    x = g
    while x != e:
        elements.append(x)
        x = action.table[(g, x)]
    sub = set(elements)
    table = {(a, b): action.table[(a, b)] for a in sub for b in sub}
    theta = {a: action.theta[a] for a in sub}
    tau = {a: action.tau[a] for a in sub}
    return GroupAction(tuple(elements), table, theta, tau,
                       name=f"<{g}>")
