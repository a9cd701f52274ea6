"""Exact-rational helpers shared by the JSON layers."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def to_fraction(x) -> Fraction:
    """Accept int, Fraction or a "p/q" string; reject floats."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def fmt(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fracs(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_fraction(x) for x in xs)


def dot(a: Iterable, b: Iterable):
    return sum((x * y for x, y in zip(a, b)), 0)
