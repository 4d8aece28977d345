"""Dual-mode scalar helpers: exact rationals and IEEE doubles.

Exact values are :class:`fractions.Fraction` (ints are promoted); floating
values are Python floats.  Text forms are ``"p/q"`` (or ``"p"``) for exact
values and the shortest round-trip ``repr`` for floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[Fraction, float]

EXACT = "exact-rational"
FLOATING = "floating"


def parse_scalar(text: str) -> Fraction:
    """Parse ``"3"``, ``"-2/7"``, ``"0.125"`` or ``"1e-3"`` exactly."""
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc


def format_scalar(value: Scalar) -> str:
    if isinstance(value, Rational):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return repr(float(value))


def is_exact(value) -> bool:
    return isinstance(value, Rational)


def kind_of(values: Iterable) -> str:
    return EXACT if all(is_exact(v) for v in values) else FLOATING


def coerce(value, kind: str) -> Scalar:
    if kind == EXACT:
        if not is_exact(value):
            raise TypeError(f"{value!r} is not an exact rational")
        return Fraction(value)
    value = float(value)
    if not math.isfinite(value):
        raise ValueError("non-finite scalar")
    return value


def pascal_table(n: int) -> list[tuple[int, ...]]:
    """Rows ``0..n`` of Pascal's triangle as Python ints (no overflow)."""
    rows = [(1,)]
    for _ in range(n):
        prev = rows[-1]
        rows.append((1,) + tuple(a + b for a, b in zip(prev, prev[1:])) + (1,))
    return rows


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)
