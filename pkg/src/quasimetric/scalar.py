"""Numeric values shared by every module.

A distance is either an exact :class:`fractions.Fraction` or a Python
``float``.  The mode is a property of a whole space, never of a single
entry; float-mode comparisons go through :func:`close` and friends with an
absolute tolerance.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

DEFAULT_TOL = 1e-9

_INT = re.compile(r"^[+-]?\d+$")
_RATIONAL = re.compile(r"^[+-]?\d+/\d+$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$")


def parse_scalar(text: str) -> Scalar:
    """Parse an integer, ``p/q`` rational, or decimal literal.

    Integers and rationals come back as ``Fraction``; anything with a decimal
    point or exponent comes back as ``float``.

    >>> parse_scalar("3/6")
    Fraction(1, 2)
    >>> parse_scalar("0.25")
    0.25
    """
    s = text.strip()
    if _INT.match(s):
        return Fraction(int(s))
    if _RATIONAL.match(s):
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    if _DECIMAL.match(s):
        return float(s)
    raise ValueError(f"not a number: {text!r}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def format_scalar(x: Scalar) -> str:
    """Text form used in matrix files: ``p/q`` or shortest round-trip float."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def to_json(x):
    """Exact values become ``"p/q"`` strings, floats stay JSON numbers."""
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return str(Fraction(x))
    return float(x)


def le(x: Scalar, y: Scalar, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(x) and is_exact(y):
        return x <= y
    return float(x) <= float(y) + tol


def close(x: Scalar, y: Scalar, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(float(x) - float(y)) <= tol
