"""Scalar backends.

All geometry in this package runs on plain Python numbers: exact
``fractions.Fraction`` values when the input data is rational, floats with a
relative tolerance otherwise.  A :class:`ScalarContext` records which backend
is in force and centralizes the zero/equality tests so that rank decisions are
made in exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction, float]

EXACT = "exact"
FLOAT = "float"

DEFAULT_TOLERANCE = 1e-9


class UnsupportedError(ValueError):
    """Raised when an operation is outside the supported desk-scale range."""


@dataclass(frozen=True)
class ScalarContext:
    backend: str = EXACT
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.backend not in (EXACT, FLOAT):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")

    @property
    def is_exact(self) -> bool:
        return self.backend == EXACT

    def is_zero(self, x: Scalar, scale: float = 1.0) -> bool:
        if self.is_exact:
            return x == 0
        return abs(x) <= self.tolerance * max(1.0, abs(scale))

    def eq(self, a: Scalar, b: Scalar, scale: float = 1.0) -> bool:
        return self.is_zero(a - b, scale=scale)


EXACT_CTX = ScalarContext(EXACT)
FLOAT_CTX = ScalarContext(FLOAT)


def is_rational(x) -> bool:
    return isinstance(x, Rational)


def all_rational(values) -> bool:
    return all(is_rational(v) for v in values)


def parse_scalar(value) -> Scalar:
    """Parse a JSON scalar: strings are exact rationals ("p/q"), numbers pass through."""
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational scalar {value!r}") from exc
    if isinstance(value, bool):
        raise ValueError("boolean is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return value
    raise ValueError(f"cannot parse scalar {value!r}")


def format_scalar(x: Scalar):
    """JSON form: rationals as strings, floats as numbers."""
    if isinstance(x, Rational):
        frac = Fraction(x)
        if frac.denominator == 1:
            return str(frac.numerator)
        return f"{frac.numerator}/{frac.denominator}"
    return float(x)


def to_float(x: Scalar) -> float:
    return float(x)
