"""Built-in point groups in Schoenflies naming.

Each constructor emits element names, the multiplication table and the tau
matrices; the vertex action (theta) is supplied by the caller, who knows the
graph.  Mirror orientation matters for polyhedral norms (axis mirrors of the
square ball preserve its facets, diagonal mirrors swap them), so the 2D
reflection groups come in oriented variants.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from . import numeric
from .scalars import FLOAT_CTX, ScalarContext

F0, F1 = Fraction(0), Fraction(1)

MIRROR_X = ((-F1, F0), (F0, F1))        # negates x: mirror line is the y-axis
MIRROR_Y = ((F1, F0), (F0, -F1))        # negates y: mirror line is the x-axis
MIRROR_DIAG = ((F0, F1), (F1, F0))      # mirror line y = x
MIRROR_ANTIDIAG = ((F0, -F1), (-F1, F0))
ROT90 = ((F0, -F1), (F1, F0))
NEG_I2 = ((-F1, F0), (F0, -F1))
I2 = ((F1, F0), (F0, F1))


def _table_from_matrices(named, ctx: ScalarContext):
    def key(m):
        if ctx.is_exact:
            return tuple(tuple(Fraction(x) for x in row) for row in m)
        return tuple(tuple(round(float(x), 7) for x in row) for row in m)

    lookup = {key(m): name for name, m in named.items()}
    table = {}
    for a, ma in named.items():
        for b, mb in named.items():
            prod = numeric.mat_mul(ma, mb)
            k = key(prod)
            if k not in lookup:
                raise ValueError(f"matrix set not closed under products at ({a},{b})")
            table[(a, b)] = lookup[k]
    return table


def _group(named, ctx: ScalarContext = None):
    from .scalars import EXACT_CTX, all_rational
    if ctx is None:
        exact = all(all_rational(row) for m in named.values() for row in m)
        ctx = EXACT_CTX if exact else FLOAT_CTX
    return {
        "elements": tuple(named.keys()),
        "table": _table_from_matrices(named, ctx),
        "tau": dict(named),
    }


def trivial(dim: int = 2):
    return _group({"id": numeric.identity(dim)})


def cs(mirror: str = "x"):
    mirrors = {"x": MIRROR_X, "y": MIRROR_Y, "diag": MIRROR_DIAG, "antidiag": MIRROR_ANTIDIAG}
    if mirror not in mirrors:
        raise ValueError(f"mirror must be one of {sorted(mirrors)}")
    return _group({"id": I2, "s": mirrors[mirror]})


def c2():
    return _group({"id": I2, "c2": NEG_I2})


def c4():
    r2 = numeric.mat_mul(ROT90, ROT90)
    r3 = numeric.mat_mul(r2, ROT90)
    return _group({"id": I2, "r": ROT90, "r2": r2, "r3": r3})


def c2v(orientation: str = "axis"):
    if orientation == "axis":
        sa, sb = MIRROR_X, MIRROR_Y
    elif orientation == "diag":
        sa, sb = MIRROR_DIAG, MIRROR_ANTIDIAG
    else:
        raise ValueError("orientation must be 'axis' or 'diag'")
    return _group({"id": I2, "c2": NEG_I2, "sa": sa, "sb": sb})


def c4v():
    r2 = numeric.mat_mul(ROT90, ROT90)
    r3 = numeric.mat_mul(r2, ROT90)
    return _group({
        "id": I2, "r": ROT90, "r2": r2, "r3": r3,
        "sv": MIRROR_X, "sh": MIRROR_Y, "sd": MIRROR_DIAG, "sa": MIRROR_ANTIDIAG,
    })


def _rot_z(angle: float):
    c, s = math.cos(angle), math.sin(angle)
    return ((c, -s, 0.0), (s, c, 0.0), (0.0, 0.0, 1.0))


SIGMA_H3 = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, -1.0))


def c3h():
    """Order-6 group generated by a 3-fold rotation about z and the
    horizontal mirror; contains the improper rotations s3 and s3^5."""
    r = _rot_z(2.0 * math.pi / 3.0)
    r2 = numeric.mat_mul(r, r)
    named = {
        "id": tuple(tuple(float(x) for x in row) for row in numeric.identity(3)),
        "c3": r,
        "c3_2": r2,
        "sh": SIGMA_H3,
        "s3": numeric.mat_mul(SIGMA_H3, r),
        "s3_5": numeric.mat_mul(SIGMA_H3, r2),
    }
    return _group(named, FLOAT_CTX)


BUILTIN_GROUPS = {
    "trivial": trivial,
    "cs": lambda: cs("x"),
    "cs_x": lambda: cs("x"),
    "cs_y": lambda: cs("y"),
    "cs_diag": lambda: cs("diag"),
    "cs_antidiag": lambda: cs("antidiag"),
    "c2": c2,
    "c4": c4,
    "c2v": lambda: c2v("axis"),
    "c2v_diag": lambda: c2v("diag"),
    "c4v": c4v,
    "c3h": c3h,
}


def builtin_group(name: str):
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise ValueError(f"unknown builtin group {name!r}") from None


def make_action(parts, theta, name: Optional[str] = None):
    from .symmetry import GroupAction
    return GroupAction(tuple(parts["elements"]), dict(parts["table"]),
                       dict(theta), dict(parts["tau"]), name=name)
