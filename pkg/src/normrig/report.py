"""Report assembly: machine form (JSON dict) and human form (text with
tab-delimited tables).  The human form is derived from the machine form; the
exit code is 1 exactly when a proven-necessary check failed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import polyhedral, symmetry
from .document import AnalysisDocument
from .framework import (
    VERDICT_NOT_WELL_POSITIONED,
    classify_rigidity,
)
from .scalars import format_scalar

PACKAGE_VERSION = "0.1.0"

STRENGTH_PROVEN = "proven"
STRENGTH_CONJECTURED = "conjectured"


@dataclass
class Check:
    id: str
    description: str
    passed: Optional[bool]
    strength: str = STRENGTH_PROVEN
    element: Optional[str] = None
    detail: object = None

    def to_dict(self):
        out = {"id": self.id, "description": self.description,
               "passed": self.passed, "strength": self.strength}
        if self.element is not None:
            out["element"] = self.element
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    command: str
    provenance: dict
    body: dict
    checks: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        for c in self.checks:
            if c.strength == STRENGTH_PROVEN and c.passed is False:
                return 1
        return 0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "provenance": self.provenance,
            "body": self.body,
            "checks": [c.to_dict() for c in self.checks],
            "exit_code": self.exit_code,
        }

    def human(self) -> str:
        lines = [f"== {self.command} report =="]
        lines.append("\t".join(f"{k}={v}" for k, v in self.provenance.items()))
        lines.extend(_human_body(self.command, self.body))
        if self.checks:
            lines.append("")
            lines.append("checks\tid\tstrength\tresult")
            for c in self.checks:
                result = "pass" if c.passed else ("FAIL" if c.passed is False else "skipped")
                lines.append(f"\t{c.id}\t{c.strength}\t{result}")
        lines.append("")
        lines.append(f"exit code: {self.exit_code}")
        return "\n".join(lines)


def _provenance(doc: AnalysisDocument, extra: Optional[dict] = None) -> dict:
    fw = doc.framework
    out = {
        "document": doc.name or "<inline>",
        "backend": fw.ctx.backend,
        "tolerance": fw.ctx.tolerance,
        "norm": fw.norm.label or fw.norm.kind,
        "version": PACKAGE_VERSION,
    }
    if extra:
        out.update(extra)
    return out


def _human_body(command: str, body: dict) -> list:
    lines = [""]
    if command == "analyze":
        lines.append(f"verdict: {body['verdict']}")
        lines.append(f"rank={body['rank']}\tdim_flex={body['dim_flex']}"
                     f"\tdim_trivial={body['dim_trivial']}")
        lines.append(f"|V|={body['vertices']}\t|E|={body['edges']}\tdim={body['dim']}")
        if body.get("bad_edges"):
            lines.append("bad edges: " + ", ".join(map(str, body["bad_edges"])))
        lines.append("")
        lines.append("maxwell\tcheck\tlhs\trhs\tresult")
        for item in body.get("maxwell", []):
            result = ("pass" if item.get("passed")
                      else "FAIL" if item.get("passed") is False else "n/a")
            lines.append(f"\t{item['check']}\t{item.get('lhs', '')}"
                         f"\t{item.get('rhs', '')}\t{result}")
    elif command == "symmetry":
        lines.append(f"symmetric: {body['valid']}")
        lines.append("")
        lines.append("character\telement\tclass\t|V_g|\t|E_g|\tchi(P_E)\tchi(tauxP_V)\tchi(triv)")
        for row in body.get("characters", []):
            lines.append("\t" + "\t".join(str(row[k]) for k in
                         ("element", "class", "fixed_vertices", "fixed_edges",
                          "chi_edge", "chi_tensor", "chi_trivial")))
        lines.append("")
        lines.append(f"intertwining residual: {body.get('intertwining_residual')}")
    elif command == "color":
        lines.append("edge\tfacet_pair")
        for edge, label in body.get("labels", []):
            lines.append(f"{edge[0]}-{edge[1]}\t{label}")
        lines.append("")
        lines.append(f"monochrome classes are spanning trees: {body.get('tree_check')}")
    elif command == "explore":
        summary = body.get("summary", {})
        lines.append("\t".join(f"{k}={v}" for k, v in summary.items()))
    return lines


def analyze_report(doc: AnalysisDocument) -> Report:
    fw = doc.framework
    verdict = classify_rigidity(fw)
    body = {
        "verdict": verdict.verdict,
        "rank": verdict.rank,
        "dim_flex": verdict.dim_flex,
        "dim_trivial": verdict.dim_trivial,
        "vertices": fw.graph.n,
        "edges": fw.graph.m,
        "dim": fw.dim,
        "maxwell": verdict.maxwell_report,
        "bad_edges": [list(e) for e in verdict.bad_edges],
    }
    checks = [Check("well-positioned", "all edge directions are smooth points",
                    verdict.verdict != VERDICT_NOT_WELL_POSITIONED)]
    for item in verdict.maxwell_report:
        checks.append(Check(item["check"], item["statement"], item["passed"]))
    return Report("analyze", _provenance(doc), body, checks)


def symmetry_report(doc: AnalysisDocument) -> Report:
    if doc.action is None:
        raise ValueError("document has no group block")
    fw = doc.framework
    action = doc.action
    validation = symmetry.validate_symmetric_framework(fw, action)
    checks = [Check("symmetric-framework", "tau(g) p(v) = p(gv) and tau(g) isometric",
                    validation.ok, detail=validation.violations or None)]
    body = {"valid": validation.ok, "violations": validation.violations}
    if validation.ok:
        rows = symmetry.character_table(fw, action)
        body["characters"] = [{
            "element": r.element, "class": str(r.op),
            "fixed_vertices": r.fixed_vertices, "fixed_edges": r.fixed_edges,
            "chi_edge": r.chi_edge, "chi_tensor": r.chi_tensor,
            "chi_trivial": r.chi_trivial, "formula_ok": r.formula_ok,
        } for r in rows]
        counts = symmetry.symmetric_count_check(fw, action)
        body["count_checks"] = [{
            "element": r.element, "class": str(r.op),
            "fixed_vertices": r.fixed_vertices, "fixed_edges": r.fixed_edges,
            "checks": r.checks,
        } for r in counts.records]
        for r in counts.records:
            for c in r.checks:
                checks.append(Check(f"count:{r.element}:{c['id']}", c["description"],
                                    c["passed"], element=r.element))
        equation = symmetry.character_equation_check(fw, action)
        checks.append(Check("character-equation",
                            "chi(P_E) = chi(tau x P_V) - chi(trivial part) for all elements",
                            equation.all_passed))
        residual = symmetry.intertwining_check(fw, action)
        body["intertwining_residual"] = format_scalar(residual)
        tol = 0 if fw.ctx.is_exact else fw.ctx.tolerance
        checks.append(Check("intertwining", "rigidity matrix intertwines the representations",
                            float(residual) <= float(tol) or residual == 0))
        if fw.norm.is_polyhedral and fw.dim == 2 and len(fw.norm.facet_pairs) == 2:
            conditions = polyhedral.quadrilateral_conditions(fw.graph, action, fw.norm, fw.ctx)
            body["conditions"] = [c.to_dict() for c in conditions]
            for c in conditions:
                passed = {"pass": True, "fail": False}.get(c.status)
                checks.append(Check(f"quad:{c.id}", c.description, passed,
                                    strength=c.strength, element=c.element,
                                    detail=c.to_dict().get("witness")))
    return Report("symmetry", _provenance(doc), body, checks)


def color_report(doc: AnalysisDocument) -> Report:
    fw = doc.framework
    if not fw.norm.is_polyhedral:
        raise ValueError("color requires a polyhedral norm")
    colored = polyhedral.edge_colors(fw)
    body = {
        "labels": [[list(e), colored.labels[e]] for e in fw.graph.edges],
        "facet_pairs": len(fw.norm.facet_pairs),
        "classes": {str(k): [list(e) for e in edges]
                    for k, edges in colored.classes.items()},
    }
    checks = []
    if fw.dim == 2 and len(fw.norm.facet_pairs) == 2:
        tree_ok = polyhedral.tree_decomposition_check(colored)
        body["tree_check"] = tree_ok
        checks.append(Check("tree-decomposition",
                            "both monochrome subgraphs are spanning trees "
                            "(equivalent to isostatic for quadrilateral balls)",
                            tree_ok))
    else:
        body["tree_check"] = None
    report = Report("color", _provenance(doc), body, checks)
    report.body["colored"] = colored
    return report


def explore_report(scan: dict) -> Report:
    body = {"summary": scan["summary"], "candidates": scan["candidates"],
            "config": scan["config"]}
    checks = [Check("no-refuting-witness",
                    "no isostatic witness violates a proven necessary condition",
                    not scan["summary"]["would_refute_necessity"])]
    provenance = {"command": "explore", "version": PACKAGE_VERSION}
    provenance.update(scan["config"])
    return Report("explore", provenance, body, checks)


def machine_form(report: Report) -> dict:
    out = report.to_dict()
    out["body"] = {k: v for k, v in out["body"].items() if k != "colored"}
    return out
