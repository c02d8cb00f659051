"""Document ingestion: one JSON schema for norm + framework + optional group.

Rationals travel as strings ("p/q"), floats as JSON numbers.  Validation
errors carry a JSON-pointer-style location.  Builtin norm names (linf2,
hexprism3, ...) and bundled fixture names (fig1a, ..., example3d) expand in
place.
"""

from __future__ import annotations

import json
import pathlib
from dataclasses import dataclass
from typing import Optional

from . import fixtures, norms
from .framework import Framework, make_framework
from .graphs import make_graph
from .scalars import (
    EXACT_CTX,
    DEFAULT_TOLERANCE,
    ScalarContext,
    format_scalar,
    parse_scalar,
)
from .symmetry import GroupAction


class DocumentError(ValueError):
    def __init__(self, message, pointer=""):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")


@dataclass
class AnalysisDocument:
    framework: Framework
    action: Optional[GroupAction]
    options: dict
    raw: dict
    name: Optional[str] = None


def _parse_norm(node, pointer):
    if isinstance(node, str):
        try:
            return norms.builtin_norm(node)
        except ValueError as exc:
            raise DocumentError(str(exc), pointer)
    if not isinstance(node, dict):
        raise DocumentError("norm must be an object or builtin name", pointer)
    kind = node.get("kind")
    if kind == "builtin":
        return _parse_norm(node.get("name", ""), pointer + "/name")
    dim = node.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise DocumentError("dim must be a positive integer", pointer + "/dim")
    try:
        if kind == "linf":
            return norms.linf(dim)
        if kind == "l1":
            return norms.l1(dim)
        if kind == "l2":
            return norms.euclidean(dim)
        if kind == "lq":
            if "q" not in node:
                raise DocumentError("lq norm needs q", pointer + "/q")
            return norms.lq(dim, parse_scalar(node["q"]))
        if kind == "polyhedral":
            if "facets" in node:
                facets = [[parse_scalar(c) for c in f] for f in node["facets"]]
                return norms.polyhedral(facets, label=node.get("label"))
            if "ball_vertices" in node:
                verts = [[parse_scalar(c) for c in p] for p in node["ball_vertices"]]
                return norms.from_ball_vertices(verts, label=node.get("label"))
            raise DocumentError("polyhedral norm needs facets or ball_vertices", pointer)
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc), pointer)
    raise DocumentError(f"unknown norm kind {kind!r}", pointer + "/kind")


def _parse_group(node, vertex_ids, dim, pointer) -> GroupAction:
    if not isinstance(node, dict):
        raise DocumentError("group must be an object", pointer)
    if "builtin" in node and "elements" not in node:
        from . import pointgroups
        parts = pointgroups.builtin_group(node["builtin"])
        elements = list(parts["elements"])
        table = parts["table"]
        tau = parts["tau"]
    else:
        elements = node.get("elements")
        if not isinstance(elements, list) or not elements:
            raise DocumentError("elements must be a nonempty list", pointer + "/elements")
        raw_table = node.get("table")
        if (not isinstance(raw_table, list) or len(raw_table) != len(elements)
                or any(len(r) != len(elements) for r in raw_table)):
            raise DocumentError("table must be a square list over elements", pointer + "/table")
        table = {}
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                c = raw_table[i][j]
                if c not in elements:
                    raise DocumentError(f"table entry {c!r} is not an element",
                                        f"{pointer}/table/{i}/{j}")
                table[(a, b)] = c
        tau = {}
        tau_node = node.get("tau", {})
        for g in elements:
            if g not in tau_node:
                raise DocumentError(f"missing tau for element {g!r}", pointer + "/tau")
            mat = tau_node[g]
            if len(mat) != dim or any(len(r) != dim for r in mat):
                raise DocumentError(f"tau[{g}] must be {dim}x{dim}", f"{pointer}/tau/{g}")
            tau[g] = tuple(tuple(parse_scalar(x) for x in row) for row in mat)
    theta_node = node.get("theta")
    if not isinstance(theta_node, dict):
        raise DocumentError("theta must map elements to vertex permutations", pointer + "/theta")
    theta = {}
    vset = set(vertex_ids)
    for g in elements:
        if g not in theta_node:
            ident_candidates = [e for e in elements
                                if all(table[(e, x)] == x for x in elements)]
            if ident_candidates and g == ident_candidates[0]:
                theta[g] = {v: v for v in vertex_ids}
                continue
            raise DocumentError(f"missing theta for element {g!r}", pointer + "/theta")
        perm = theta_node[g]
        if set(perm.keys()) != vset or set(perm.values()) != vset:
            raise DocumentError(f"theta[{g}] is not a permutation of the vertex ids",
                                f"{pointer}/theta/{g}")
        theta[g] = dict(perm)
    return GroupAction(tuple(elements), table, theta, tau, name=node.get("name"))


def load_document_dict(doc: dict, source: Optional[str] = None) -> AnalysisDocument:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if "norm" not in doc:
        raise DocumentError("missing norm", "/norm")
    norm = _parse_norm(doc["norm"], "/norm")
    raw_vertices = doc.get("vertices")
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise DocumentError("vertices must be a nonempty list", "/vertices")
    ids = []
    points = {}
    for i, entry in enumerate(raw_vertices):
        ptr = f"/vertices/{i}"
        if not isinstance(entry, dict) or "id" not in entry or "coords" not in entry:
            raise DocumentError("vertex needs id and coords", ptr)
        vid = str(entry["id"])
        if vid in points:
            raise DocumentError(f"duplicate vertex id {vid!r}", ptr + "/id")
        coords = entry["coords"]
        if len(coords) != norm.dim:
            raise DocumentError(f"expected {norm.dim} coordinates", ptr + "/coords")
        try:
            points[vid] = tuple(parse_scalar(c) for c in coords)
        except ValueError as exc:
            raise DocumentError(str(exc), ptr + "/coords")
        ids.append(vid)
    raw_edges = doc.get("edges", [])
    edges = []
    for i, e in enumerate(raw_edges):
        if len(e) != 2:
            raise DocumentError("edge must have two endpoints", f"/edges/{i}")
        u, v = str(e[0]), str(e[1])
        for w in (u, v):
            if w not in points:
                raise DocumentError(f"edge endpoint {w!r} is not a vertex id", f"/edges/{i}")
        edges.append((u, v))
    try:
        graph = make_graph(ids, edges)
    except ValueError as exc:
        raise DocumentError(str(exc), "/edges")

    options = dict(doc.get("options", {}))
    ctx = None
    backend = options.get("backend")
    if backend is not None:
        tolerance = float(options.get("tolerance", DEFAULT_TOLERANCE))
        ctx = ScalarContext(backend, tolerance) if backend == "float" else EXACT_CTX
    try:
        fw = make_framework(graph, points, norm, ctx)
    except ValueError as exc:
        raise DocumentError(str(exc), "/vertices")

    action = None
    if "group" in doc:
        action = _parse_group(doc["group"], ids, norm.dim, "/group")
    return AnalysisDocument(fw, action, options, doc, name=doc.get("name", source))


def _fixture_path(name: str) -> Optional[pathlib.Path]:
    base = pathlib.Path(__file__).parent / "fixtures"
    stem = name[:-5] if name.endswith(".json") else name
    candidate = base / f"{stem}.json"
    return candidate if candidate.exists() else None


def load_document(source) -> AnalysisDocument:
    """Load from a dict, a path, or a bundled fixture name."""
    if isinstance(source, dict):
        return load_document_dict(source)
    path = pathlib.Path(str(source))
    if path.exists():
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}")
        return load_document_dict(doc, source=path.stem)
    bundled = _fixture_path(str(source))
    if bundled is not None:
        return load_document_dict(json.loads(bundled.read_text()), source=bundled.stem)
    if str(source) in fixtures.FIXTURES or str(source).removesuffix(".json") in fixtures.FIXTURES:
        return load_document_dict(fixtures.fixture_document(str(source)), source=str(source))
    raise DocumentError(f"no such file or builtin document: {source}")


def serialize_document(doc: AnalysisDocument) -> dict:
    """Canonical machine form; loading then serializing is idempotent."""
    fw = doc.framework
    norm_node = doc.raw.get("norm")
    if isinstance(norm_node, str):
        norm_out = norm_node
    else:
        norm_out = dict(norm_node)
    out = {
        "norm": norm_out,
        "vertices": [{"id": v, "coords": [format_scalar(c) for c in fw.points[v]]}
                     for v in fw.graph.vertices],
        "edges": [[a, b] for a, b in fw.graph.edges],
    }
    if doc.name:
        out["name"] = doc.name
    if doc.action is not None:
        act = doc.action
        out["group"] = {
            "name": act.name,
            "elements": list(act.elements),
            "table": [[act.table[(a, b)] for b in act.elements] for a in act.elements],
            "tau": {g: [[format_scalar(x) for x in row] for row in act.tau[g]]
                    for g in act.elements},
            "theta": {g: dict(act.theta[g]) for g in act.elements},
        }
    if doc.options:
        out["options"] = dict(doc.options)
    return out
