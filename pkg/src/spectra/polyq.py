"""Characteristic polynomials and their rational roots."""
from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

import sympy

if TYPE_CHECKING:
    from .ratmat import RatMatrix


def char_poly(M: "RatMatrix") -> list[Fraction]:
    """Coefficients c_0..c_n of det(x I - M), highest degree first (Faddeev-LeVerrier)."""
    from .ratmat import RatMatrix
    n = M.nrows
    coeffs = [Fraction(1)]
    Mk = RatMatrix.zeros(n, n)
    I = RatMatrix.identity(n)
    for k in range(1, n + 1):
        Mk = M @ (Mk + I.scale(coeffs[-1]))
        coeffs.append(-(Mk.trace()) / k)
    return coeffs


def rational_roots(coeffs: list[Fraction]) -> dict[Fraction, int]:
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x, domain="QQ")
    out: dict[Fraction, int] = {}
    for fac, mult in poly.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            out[Fraction(int(r.p), int(r.q))] = out.get(Fraction(int(r.p), int(r.q)), 0) + mult
    return out
