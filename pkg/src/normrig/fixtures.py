"""Bundled demonstration documents.

Nine planar frameworks over the sup norm (fig1a-fig1f isostatic with mirror,
half-turn, 4-fold and dihedral symmetries; fig3a/fig3b symmetric but not
isostatic; fig3c isostatic under a facet-swapping mirror) and one
13-vertex spatial framework over the hexagonal-prism norm (example3d).
The JSON files shipped with the package are generated from these builders;
fixtures double as schema documentation.
"""

from __future__ import annotations

import math

from . import pointgroups

_SQRT3 = math.sqrt(3.0)


def _serialize_table(elements, table):
    return [[table[(a, b)] for b in elements] for a in elements]


def _serialize_tau(tau):
    out = {}
    for g, mat in tau.items():
        out[g] = [[_coord(x) for x in row] for row in mat]
    return out


def _coord(x):
    from .scalars import format_scalar
    return format_scalar(x)


def _complete_theta(parts, gen_theta, vertices):
    """Extend generator permutations to the whole group via the table."""
    elements = list(parts["elements"])
    table = parts["table"]
    ident = None
    for e in elements:
        if all(table[(e, x)] == x for x in elements):
            ident = e
            break
    theta = {ident: {v: v for v in vertices}}
    theta.update({g: dict(p) for g, p in gen_theta.items()})
    changed = True
    while changed:
        changed = False
        for g in list(theta):
            for h in list(theta):
                gh = table[(g, h)]
                if gh not in theta:
                    theta[gh] = {v: theta[g][theta[h][v]] for v in vertices}
                    changed = True
    missing = [g for g in elements if g not in theta]
    if missing:
        raise ValueError(f"generators do not generate the group; missing {missing}")
    return theta


def _group_doc(name, parts, gen_theta, vertices):
    theta = _complete_theta(parts, gen_theta, vertices)
    return {
        "name": name,
        "elements": list(parts["elements"]),
        "table": _serialize_table(parts["elements"], parts["table"]),
        "tau": _serialize_tau(parts["tau"]),
        "theta": {g: {str(v): str(w) for v, w in perm.items()} for g, perm in theta.items()},
    }


def _doc(name, norm, coords, edges, group=None, backend=None):
    doc = {
        "name": name,
        "norm": norm,
        "vertices": [{"id": v, "coords": [_coord(c) for c in p]} for v, p in coords],
        "edges": [[str(a), str(b)] for a, b in edges],
    }
    if group is not None:
        doc["group"] = group
    if backend is not None:
        doc["options"] = {"backend": backend}
    return doc


LINF2 = {"kind": "linf", "dim": 2}


def fig1a():
    from fractions import Fraction as F
    coords = [
        ("a", (F(0), F(3, 5))),
        ("b", (F(-1), F(0))),
        ("c", (F(1), F(0))),
        ("d", (F(-6, 5), F(-4, 5))),
        ("e", (F(6, 5), F(-4, 5))),
    ]
    edges = [("a", "b"), ("a", "c"), ("a", "d"), ("a", "e"),
             ("b", "d"), ("c", "e"), ("d", "c"), ("e", "b")]
    vertices = [v for v, _ in coords]
    group = _group_doc("cs", pointgroups.cs("x"),
                       {"s": {"a": "a", "b": "c", "c": "b", "d": "e", "e": "d"}},
                       vertices)
    return _doc("fig1a", LINF2, coords, edges, group)


def fig1b():
    from fractions import Fraction as F
    coords = [
        ("v1", (F(3, 5), F(3, 5))),
        ("v2", (F(-3, 5), F(7, 10))),
        ("v3", (F(-9, 10), F(1, 5))),
        ("v4", (F(7, 10), F(-3, 5))),
        ("v5", (F(1, 5), F(-9, 10))),
        ("v6", (F(-3, 5), F(-3, 5))),
    ]
    edges = [("v1", "v2"), ("v1", "v3"), ("v1", "v4"), ("v1", "v5"),
             ("v2", "v3"), ("v4", "v5"), ("v2", "v5"), ("v4", "v3"),
             ("v6", "v3"), ("v6", "v5")]
    vertices = [v for v, _ in coords]
    group = _group_doc("cs_diag", pointgroups.cs("diag"),
                       {"s": {"v1": "v1", "v2": "v4", "v4": "v2",
                              "v3": "v5", "v5": "v3", "v6": "v6"}},
                       vertices)
    return _doc("fig1b", LINF2, coords, edges, group)


def fig1c():
    from fractions import Fraction as F
    coords = [
        ("v1", (F(-4, 5), F(1, 5))),
        ("v2", (F(4, 5), F(-1, 5))),
        ("v3", (F(-2, 5), F(-3, 5))),
        ("v4", (F(2, 5), F(3, 5))),
    ]
    edges = [("v1", "v2"), ("v1", "v3"), ("v1", "v4"),
             ("v2", "v4"), ("v3", "v4"), ("v3", "v2")]
    vertices = [v for v, _ in coords]
    group = _group_doc("c2", pointgroups.c2(),
                       {"c2": {"v1": "v2", "v2": "v1", "v3": "v4", "v4": "v3"}},
                       vertices)
    return _doc("fig1c", LINF2, coords, edges, group)


def fig1d():
    from fractions import Fraction as F
    coords = [
        ("c", (F(0), F(0))),
        ("a1", (F(1, 5), F(14, 25))),
        ("a2", (F(-14, 25), F(1, 5))),
        ("a3", (F(-1, 5), F(-14, 25))),
        ("a4", (F(14, 25), F(-1, 5))),
        ("o1", (F(16, 25), F(16, 25))),
        ("o2", (F(-16, 25), F(16, 25))),
        ("o3", (F(-16, 25), F(-16, 25))),
        ("o4", (F(16, 25), F(-16, 25))),
    ]
    edges = [("a1", "a2"), ("a2", "a3"), ("a3", "a4"), ("a1", "a4"),
             ("c", "a1"), ("c", "a2"), ("c", "a3"), ("c", "a4"),
             ("o1", "a1"), ("o1", "a4"), ("o2", "a1"), ("o2", "a2"),
             ("o3", "a2"), ("o3", "a3"), ("o4", "a3"), ("o4", "a4")]
    vertices = [v for v, _ in coords]
    rot = {"c": "c", "a1": "a2", "a2": "a3", "a3": "a4", "a4": "a1",
           "o1": "o2", "o2": "o3", "o3": "o4", "o4": "o1"}
    group = _group_doc("c4", pointgroups.c4(), {"r": rot}, vertices)
    return _doc("fig1d", LINF2, coords, edges, group)


def fig1e():
    from fractions import Fraction as F
    coords = [
        ("z", (F(0), F(0))),
        ("i1", (F(-3, 10), F(1, 2))),
        ("i2", (F(3, 10), F(1, 2))),
        ("i3", (F(-3, 10), F(-1, 2))),
        ("i4", (F(3, 10), F(-1, 2))),
        ("u1", (F(-6, 5), F(13, 20))),
        ("u2", (F(6, 5), F(13, 20))),
        ("u3", (F(-6, 5), F(-13, 20))),
        ("u4", (F(6, 5), F(-13, 20))),
    ]
    edges = [("z", "i1"), ("z", "i2"), ("z", "i3"), ("z", "i4"),
             ("z", "u1"), ("z", "u2"), ("z", "u3"), ("z", "u4"),
             ("i1", "u3"), ("i3", "u1"), ("i3", "u3"), ("i1", "u1"),
             ("i2", "u4"), ("i4", "u2"), ("i4", "u4"), ("i2", "u2")]
    vertices = [v for v, _ in coords]
    sa = {"z": "z", "i1": "i2", "i2": "i1", "i3": "i4", "i4": "i3",
          "u1": "u2", "u2": "u1", "u3": "u4", "u4": "u3"}
    sb = {"z": "z", "i1": "i3", "i3": "i1", "i2": "i4", "i4": "i2",
          "u1": "u3", "u3": "u1", "u2": "u4", "u4": "u2"}
    group = _group_doc("c2v", pointgroups.c2v("axis"), {"sa": sa, "sb": sb}, vertices)
    return _doc("fig1e", LINF2, coords, edges, group)


def fig1f():
    from fractions import Fraction as F
    coords = [("z", (F(0), F(0)))]
    ring = {
        "b1": (F(3, 4), F(1, 4)), "b2": (F(1, 4), F(3, 4)),
        "b3": (F(-1, 4), F(3, 4)), "b4": (F(-3, 4), F(1, 4)),
        "b5": (F(-3, 4), F(-1, 4)), "b6": (F(-1, 4), F(-3, 4)),
        "b7": (F(1, 4), F(-3, 4)), "b8": (F(3, 4), F(-1, 4)),
    }
    coords += sorted(ring.items())
    edges = [("z", b) for b in sorted(ring)]
    edges += [("b1", "b3"), ("b2", "b4"), ("b3", "b5"), ("b4", "b6"),
              ("b5", "b7"), ("b6", "b8"), ("b7", "b1"), ("b8", "b2")]
    vertices = [v for v, _ in coords]
    rot = {"z": "z", "b1": "b3", "b3": "b5", "b5": "b7", "b7": "b1",
           "b2": "b4", "b4": "b6", "b6": "b8", "b8": "b2"}
    sv = {"z": "z", "b1": "b4", "b4": "b1", "b2": "b3", "b3": "b2",
          "b5": "b8", "b8": "b5", "b6": "b7", "b7": "b6"}
    group = _group_doc("c4v", pointgroups.c4v(), {"r": rot, "sv": sv}, vertices)
    return _doc("fig1f", LINF2, coords, edges, group)


def _double_k4_edges():
    left = [("l1", "l2"), ("l1", "l3"), ("l1", "l4"),
            ("l2", "l3"), ("l2", "l4"), ("l3", "l4")]
    right = [(a.replace("l", "r"), b.replace("l", "r")) for a, b in left]
    return left + right + [("l3", "r4"), ("l4", "r3")]


def fig3a():
    from fractions import Fraction as F
    coords = [
        ("l1", (F(-13, 10), F(-1, 5))), ("l2", (F(-13, 10), F(2, 5))),
        ("l3", (F(-3, 5), F(-2, 5))), ("l4", (F(-3, 5), F(3, 10))),
        ("r1", (F(13, 10), F(-1, 5))), ("r2", (F(13, 10), F(2, 5))),
        ("r3", (F(3, 5), F(-2, 5))), ("r4", (F(3, 5), F(3, 10))),
    ]
    vertices = [v for v, _ in coords]
    swap = {f"l{i}": f"r{i}" for i in range(1, 5)}
    swap.update({f"r{i}": f"l{i}" for i in range(1, 5)})
    group = _group_doc("cs", pointgroups.cs("x"), {"s": swap}, vertices)
    return _doc("fig3a", LINF2, coords, _double_k4_edges(), group)


def fig3b():
    from fractions import Fraction as F
    coords = [
        ("l1", (F(-13, 10), F(-1, 5))), ("l2", (F(-13, 10), F(2, 5))),
        ("l3", (F(-3, 5), F(-2, 5))), ("l4", (F(-3, 5), F(3, 10))),
        ("r1", (F(13, 10), F(1, 5))), ("r2", (F(13, 10), F(-2, 5))),
        ("r3", (F(3, 5), F(2, 5))), ("r4", (F(3, 5), F(-3, 10))),
    ]
    vertices = [v for v, _ in coords]
    swap = {f"l{i}": f"r{i}" for i in range(1, 5)}
    swap.update({f"r{i}": f"l{i}" for i in range(1, 5)})
    group = _group_doc("c2", pointgroups.c2(), {"c2": swap}, vertices)
    return _doc("fig3b", LINF2, coords, _double_k4_edges(), group)


def fig3c():
    from fractions import Fraction as F
    coords = [
        ("l1", (F(-11, 10), F(0))), ("l2", (F(-1), F(9, 10))),
        ("l3", (F(-2, 5), F(0))), ("l4", (F(-3, 10), F(3, 5))),
        ("r1", (F(0), F(-11, 10))), ("r2", (F(9, 10), F(-1))),
        ("r3", (F(0), F(-2, 5))), ("r4", (F(3, 5), F(-3, 10))),
    ]
    vertices = [v for v, _ in coords]
    swap = {f"l{i}": f"r{i}" for i in range(1, 5)}
    swap.update({f"r{i}": f"l{i}" for i in range(1, 5)})
    group = _group_doc("cs_diag", pointgroups.cs("diag"), {"s": swap}, vertices)
    return _doc("fig3c", LINF2, coords, _double_k4_edges(), group)


def example3d():
    rot = ((-0.5, -_SQRT3 / 2.0, 0.0), (_SQRT3 / 2.0, -0.5, 0.0), (0.0, 0.0, 1.0))

    def apply(mat, p):
        return tuple(sum(mat[i][j] * p[j] for j in range(3)) for i in range(3))

    def mirror(p):
        return (p[0], p[1], -p[2])

    v1 = (-0.25, -1.0, 0.25)
    v1p = (-0.25, -1.0, 1.5)
    coords = {"o": (0.0, 0.0, 0.0)}
    for base, tag in ((v1, "v{}"), (v1p, "v{}p")):
        p = base
        for j in (1, 2, 3):
            coords[tag.format(j)] = p
            coords["w" + tag.format(j)[1:]] = mirror(p)
            p = apply(rot, p)
    order = ["o"] + [f"{w}{j}{s}" for w in ("v", "w") for s in ("", "p") for j in (1, 2, 3)]
    coord_list = [(name, coords[name]) for name in order]

    edges = []
    for w in ("v", "w"):
        for s in ("", "p"):
            edges += [(f"{w}1{s}", f"{w}2{s}"), (f"{w}2{s}", f"{w}3{s}"), (f"{w}3{s}", f"{w}1{s}")]
        edges += [(f"{w}{j}", f"{w}{j}p") for j in (1, 2, 3)]
    edges += [("v1", "w3p"), ("w1", "v3p"), ("v2", "w1p"),
              ("w2", "v1p"), ("v3", "w2p"), ("w3", "v2p")]
    edges += [("o", name) for name in order if name != "o"]

    cyc = {"o": "o"}
    for w in ("v", "w"):
        for s in ("", "p"):
            cyc.update({f"{w}1{s}": f"{w}2{s}", f"{w}2{s}": f"{w}3{s}", f"{w}3{s}": f"{w}1{s}"})
    flip = {"o": "o"}
    for j in (1, 2, 3):
        for s in ("", "p"):
            flip[f"v{j}{s}"] = f"w{j}{s}"
            flip[f"w{j}{s}"] = f"v{j}{s}"
    group = _group_doc("c3h", pointgroups.c3h(), {"c3": cyc, "sh": flip}, order)
    return _doc("example3d", "hexprism3", coord_list, edges, group, backend="float")


FIXTURES = {
    "fig1a": fig1a,
    "fig1b": fig1b,
    "fig1c": fig1c,
    "fig1d": fig1d,
    "fig1e": fig1e,
    "fig1f": fig1f,
    "fig3a": fig3a,
    "fig3b": fig3b,
    "fig3c": fig3c,
    "example3d": example3d,
}


def fixture_document(name: str) -> dict:
    key = name[:-5] if name.endswith(".json") else name
    try:
        return FIXTURES[key]()
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}") from None


def write_fixture_files(directory) -> list:
    """Regenerate the bundled JSON files (used at development time)."""
    import json
    import pathlib
    out = []
    target = pathlib.Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    for name, builder in sorted(FIXTURES.items()):
        path = target / f"{name}.json"
        path.write_text(json.dumps(builder(), indent=2, sort_keys=True) + "\n")
        out.append(path)
    return out
