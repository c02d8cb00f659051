"""Polyhedral-norm machinery: facet colorings of edges, spanning-tree
certificates, facet-preserving vs facet-swapping symmetries, and the
necessary-condition battery for quadrilateral unit balls.

Every condition emitted individually by the quadrilateral battery is a proven
necessary condition for isostaticity; the single "b-set" aggregate records
whether the conjectured-sufficient condition set for the detected group type
holds, and is the only entry carrying the conjectured strength.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import numeric, sparsity
from .framework import Framework, NotWellPositionedError
from .graphs import Graph
from .norms import NormSpec
from .scalars import EXACT_CTX, FLOAT_CTX, ScalarContext
from .symmetry import (
    KIND_REFLECTION,
    KIND_ROTATION,
    GroupAction,
    classify_operation,
    cyclic_subaction,
    fixed_elements,
)

PRESERVES = "preserves"
SWAPS = "swaps"

STRENGTH_PROVEN = "proven"
STRENGTH_CONJECTURED = "conjectured"


@dataclass
class ColoredGraph:
    graph: Graph
    labels: dict            # edge -> facet pair index
    n_pairs: int
    dim: int

    def monochrome(self, label: int) -> tuple:
        return tuple(e for e in self.graph.edges if self.labels[e] == label)

    @property
    def classes(self) -> dict:
        return {k: self.monochrome(k) for k in range(self.n_pairs)}


def edge_colors(fw: Framework) -> ColoredGraph:
    """Label each edge by the antipodal facet pair whose cone contains it."""
    if not fw.norm.is_polyhedral:
        raise ValueError("edge coloring requires a polyhedral norm")
    labels = {}
    bad = []
    for e in fw.graph.edges:
        diff = fw.edge_vector(*e)
        f = fw.norm.support_functional(diff, fw.ctx)
        if f is None:
            bad.append(e)
            continue
        labels[e] = fw.norm.pair_of_facet(fw.norm.facets.index(f))
    if bad:
        raise NotWellPositionedError(bad)
    return ColoredGraph(fw.graph, labels, len(fw.norm.facet_pairs), fw.dim)


def tree_decomposition_check(cg: ColoredGraph, allow_experimental_3d: bool = False) -> bool:
    """True iff every monochrome class is a spanning tree.

    Proven criterion for quadrilateral balls in the plane (two labels); for
    more labels it is available only behind the experimental flag and demands
    one tree per dimension.
    """
    if cg.n_pairs != 2:
        if not allow_experimental_3d:
            raise ValueError("tree criterion is stated for quadrilateral balls (two facet pairs)")
        if cg.n_pairs != cg.dim:
            return False
    return all(cg.graph.is_spanning_tree_edges(cg.monochrome(k)) for k in range(cg.n_pairs))


def facet_action(norm: NormSpec, mat, ctx: Optional[ScalarContext] = None) -> str:
    """Whether an isometry maps each facet into its own antipodal pair."""
    if not norm.is_polyhedral:
        raise ValueError("facet action requires a polyhedral norm")
    if ctx is None:
        ctx = EXACT_CTX if norm.exact_capable else FLOAT_CTX
    if not norm.is_isometry(mat, ctx):
        raise ValueError("matrix is not an isometry of the norm")
    n = numeric.transpose(numeric.mat_inverse(numeric.as_matrix(mat)))
    perm = norm._permutes_facets(n, ctx)
    for i, j in enumerate(perm):
        if norm.pair_of_facet(i) != norm.pair_of_facet(j):
            return SWAPS
    return PRESERVES


@dataclass
class Condition:
    id: str
    description: str
    status: str                  # "pass" | "fail" | "skipped"
    strength: str                # "proven" | "conjectured"
    element: Optional[str] = None
    witness: object = None
    data: dict = field(default_factory=dict)

    @property
    def failed_proven(self) -> bool:
        return self.status == "fail" and self.strength == STRENGTH_PROVEN

    def to_dict(self):
        out = {"id": self.id, "description": self.description,
               "status": self.status, "strength": self.strength}
        if self.element is not None:
            out["element"] = self.element
        if self.witness is not None:
            out["witness"] = sorted(str(v) for v in self.witness) \
                if isinstance(self.witness, (set, frozenset)) else self.witness
        if self.data:
            out["data"] = self.data
        return out


def _quad_precheck(graph: Graph, norm: NormSpec):
    if not norm.is_polyhedral:
        raise ValueError("quadrilateral conditions require a polyhedral norm")
    if norm.dim != 2:
        raise ValueError("quadrilateral conditions are two-dimensional")
    if len(norm.facet_pairs) != 2:
        raise ValueError("unit ball must be a quadrilateral (two facet pairs)")


PARAMS22 = sparsity.SparsityParams(2, 2)


def _orbit_perms(action: GroupAction):
    return [action.theta[g] for g in action.elements]


def _tight_subgraph_condition(graph: Graph, action: GroupAction, g, cond_id: str,
                              description: str, require_fixed_vertex_only: bool):
    """Search <g>-closed tight subgraphs lacking fixed vertices (and edges)."""
    sub = cyclic_subaction(action, g)
    sparse, _ = sparsity.is_sparse(graph, PARAMS22)
    if not sparse:
        return Condition(cond_id, description, "skipped", STRENGTH_PROVEN, element=g,
                         data={"reason": "graph not (2,2)-sparse"})
    vg, eg = fixed_elements(graph, action, g)
    for w in sparsity.symmetric_tight_subgraphs(graph, PARAMS22, _orbit_perms(sub)):
        has_fixed_vertex = bool(w & vg)
        if require_fixed_vertex_only:
            violating = not has_fixed_vertex
        else:
            induced = set(graph.induced_edges(w))
            violating = not has_fixed_vertex and not (induced & eg)
        if violating:
            return Condition(cond_id, description, "fail", STRENGTH_PROVEN, element=g,
                             witness=w)
    return Condition(cond_id, description, "pass", STRENGTH_PROVEN, element=g)


def quadrilateral_conditions(graph: Graph, action: GroupAction, norm: NormSpec,
                             ctx: Optional[ScalarContext] = None) -> list:
    """Necessary-condition battery for symmetric isostatic frameworks whose
    unit ball is a quadrilateral, evaluated from the graph and action alone
    (placement-free)."""
    _quad_precheck(graph, norm)
    if ctx is None:
        ctx = EXACT_CTX if norm.exact_capable else FLOAT_CTX
    conditions = []
    tight = sparsity.is_tight(graph, PARAMS22)
    sparse, witness = sparsity.is_sparse(graph, PARAMS22)
    conditions.append(Condition(
        "tight-2-2", "graph is (2,2)-tight", "pass" if tight else "fail",
        STRENGTH_PROVEN, witness=None if sparse else witness,
        data={"edges": graph.m, "target": 2 * graph.n - 2}))

    classified = {}
    actions_on_facets = {}
    for g in action.elements:
        op = classify_operation(numeric.as_matrix(action.tau[g]), 2, ctx)
        classified[g] = op
        actions_on_facets[g] = facet_action(norm, action.tau[g], ctx)

    reflections = [g for g, op in classified.items() if op.kind == KIND_REFLECTION]
    half_turns = [g for g, op in classified.items()
                  if op.kind == KIND_ROTATION and op.angle_den == 2]
    four_folds = [g for g, op in classified.items()
                  if op.kind == KIND_ROTATION and op.angle_den == 4]

    for s in reflections:
        vg, eg = fixed_elements(graph, action, s)
        fa = actions_on_facets[s]
        if fa == PRESERVES:
            conditions.append(Condition(
                f"mirror-fixed-vertex:{s}", "facet-preserving mirror fixes exactly one vertex",
                "pass" if len(vg) == 1 else "fail", STRENGTH_PROVEN, element=s,
                data={"fixed_vertices": len(vg), "facet_action": fa}))
            conditions.append(Condition(
                f"mirror-no-fixed-edges:{s}", "mirror fixes no edges",
                "pass" if len(eg) == 0 else "fail", STRENGTH_PROVEN, element=s,
                data={"fixed_edges": len(eg), "facet_action": fa}))
            if len(vg) == 1:
                v0 = next(iter(vg))
                deg = graph.degree(v0)
                conditions.append(Condition(
                    f"mirror-fixed-degree:{s}", "degree of the mirror-fixed vertex is >= 4",
                    "pass" if deg >= 4 else "fail", STRENGTH_PROVEN, element=s,
                    data={"vertex": str(v0), "degree": deg}))
            else:
                conditions.append(Condition(
                    f"mirror-fixed-degree:{s}", "degree of the mirror-fixed vertex is >= 4",
                    "skipped", STRENGTH_PROVEN, element=s,
                    data={"reason": "no unique fixed vertex"}))
            conditions.append(_tight_subgraph_condition(
                graph, action, s, f"mirror-tight-subgraphs:{s}",
                "every mirror-symmetric (2,2)-tight subgraph contains the fixed vertex",
                require_fixed_vertex_only=True))
        else:
            conditions.append(Condition(
                f"mirror-no-fixed-edges:{s}", "facet-swapping mirror fixes no edges",
                "pass" if len(eg) == 0 else "fail", STRENGTH_PROVEN, element=s,
                data={"fixed_edges": len(eg), "facet_action": fa}))

    for r in half_turns:
        vg, eg = fixed_elements(graph, action, r)
        V, E = len(vg), len(eg)
        conditions.append(_tight_subgraph_condition(
            graph, action, r, f"halfturn-tight-subgraphs:{r}",
            "no half-turn-symmetric (2,2)-tight subgraph avoids all fixed vertices and edges",
            require_fixed_vertex_only=False))
        conditions.append(Condition(
            f"halfturn-dichotomy:{r}", "(|V_2|,|E_2|) is (1,0) or (0,2)",
            "pass" if (V, E) in ((1, 0), (0, 2)) else "fail", STRENGTH_PROVEN, element=r,
            data={"fixed_vertices": V, "fixed_edges": E}))
        if (V, E) == (1, 0):
            v0 = next(iter(vg))
            deg = graph.degree(v0)
            conditions.append(Condition(
                f"halfturn-fixed-degree:{r}", "degree of the half-turn-fixed vertex is >= 4",
                "pass" if deg >= 4 else "fail", STRENGTH_PROVEN, element=r,
                data={"vertex": str(v0), "degree": deg}))

    for r in four_folds:
        conditions.append(Condition(
            f"fourfold-facet-action:{r}",
            "facet action of the 4-fold rotation (recorded, no extra conditions inferred)",
            "pass", STRENGTH_PROVEN, element=r,
            data={"facet_action": actions_on_facets[r]}))

    conditions.append(_b_set_aggregate(graph, action, classified, actions_on_facets, conditions))
    return conditions


def _b_set_aggregate(graph, action, classified, facet_acts, conditions) -> Condition:
    """Evaluate the conjectured-sufficient set (B) for the detected group type."""
    kinds = sorted(str(classified[g]) for g in action.elements)
    reflections = [g for g, op in classified.items() if op.kind == KIND_REFLECTION]
    half_turns = [g for g, op in classified.items()
                  if op.kind == KIND_ROTATION and op.angle_den == 2]
    four_folds = [g for g, op in classified.items()
                  if op.kind == KIND_ROTATION and op.angle_den == 4]
    order = len(action.elements)
    preserving = [s for s in reflections if facet_acts[s] == PRESERVES]
    swapping = [s for s in reflections if facet_acts[s] == SWAPS]

    by_id = {c.id: c for c in conditions}
    tight_ok = by_id["tight-2-2"].status == "pass"

    def cond_ok(prefix, g):
        c = by_id.get(f"{prefix}:{g}")
        return c is not None and c.status == "pass"

    def fixed_counts(g):
        vg, eg = fixed_elements(graph, action, g)
        return len(vg), len(eg)

    clauses = [("tight-2-2", tight_ok)]
    if order == 2 and len(reflections) == 1:
        s = reflections[0]
        if facet_acts[s] == PRESERVES:
            group_type = "cs (facet-preserving)"
            clauses += [
                (f"|V_s|=1:{s}", cond_ok("mirror-fixed-vertex", s)),
                (f"|E_s|=0:{s}", cond_ok("mirror-no-fixed-edges", s)),
                (f"deg>=4:{s}", cond_ok("mirror-fixed-degree", s)),
                (f"subgraphs:{s}", cond_ok("mirror-tight-subgraphs", s)),
            ]
        else:
            group_type = "cs (facet-swapping)"
            clauses += [(f"|E_s|=0:{s}", cond_ok("mirror-no-fixed-edges", s))]
    elif order == 2 and len(half_turns) == 1:
        group_type = "c2"
        r = half_turns[0]
        clauses += [
            (f"subgraphs:{r}", cond_ok("halfturn-tight-subgraphs", r)),
            (f"dichotomy:{r}", cond_ok("halfturn-dichotomy", r)),
        ]
    elif order == 4 and four_folds and not reflections:
        group_type = "c4"
        r2 = half_turns[0]
        clauses += [
            (f"subgraphs:{r2}", cond_ok("halfturn-tight-subgraphs", r2)),
            (f"dichotomy:{r2}", cond_ok("halfturn-dichotomy", r2)),
        ]
    elif order == 4 and len(reflections) == 2:
        r = half_turns[0]
        if preserving:
            group_type = "c2v (facet-preserving mirrors)"
            for s in reflections:
                V, E = fixed_counts(s)
                clauses += [
                    (f"subgraphs:{s}", cond_ok("mirror-tight-subgraphs", s)),
                    (f"(|V|,|E|)=(1,0):{s}", (V, E) == (1, 0)),
                ]
            V, E = fixed_counts(r)
            clauses += [
                (f"subgraphs:{r}", cond_ok("halfturn-tight-subgraphs", r)),
                (f"(|V|,|E|)=(1,0):{r}", (V, E) == (1, 0)),
            ]
        else:
            group_type = "c2v (facet-swapping mirrors)"
            clauses += [(f"subgraphs:{r}", cond_ok("halfturn-tight-subgraphs", r)),
                        (f"dichotomy:{r}", cond_ok("halfturn-dichotomy", r))]
            for s in reflections:
                clauses += [(f"|E_s|=0:{s}", cond_ok("mirror-no-fixed-edges", s))]
    elif order == 8:
        group_type = "c4v"
        r2 = half_turns[0]
        for s in preserving:
            clauses += [
                (f"subgraphs:{s}", cond_ok("mirror-tight-subgraphs", s)),
                (f"|E_s|=0:{s}", cond_ok("mirror-no-fixed-edges", s)),
            ]
        clauses += [
            (f"subgraphs:{r2}", cond_ok("halfturn-tight-subgraphs", r2)),
            (f"dichotomy:{r2}", cond_ok("halfturn-dichotomy", r2)),
        ]
    elif order == 1:
        group_type = "trivial"
    else:
        return Condition(
            "b-set", "conjectured-sufficient condition set (unrecognized group type)",
            "skipped", STRENGTH_CONJECTURED, data={"operations": kinds})

    passed = all(ok for _, ok in clauses)
    return Condition(
        "b-set",
        f"conjectured-sufficient condition set for {group_type} satisfied "
        "(an isostatic symmetric placement is conjectured to exist)",
        "pass" if passed else "fail", STRENGTH_CONJECTURED,
        data={"group_type": group_type,
              "clauses": [{"clause": cid, "ok": ok} for cid, ok in clauses]})


def quadrilateral_conditions_for_framework(fw: Framework, action: GroupAction) -> list:
    return quadrilateral_conditions(fw.graph, action, fw.norm, fw.ctx)
