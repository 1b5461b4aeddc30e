"""Exact complex-rational scalars.

Coefficients in the enveloping algebra and the twisted models live in the
Gaussian rationals ``QQ_I`` from sympy.  Weights and Gram matrices stay in
``fractions.Fraction``.  Note that ``QQ_I`` elements do not compare equal to
Python ints, so zero tests must use truthiness.
"""
from __future__ import annotations

from fractions import Fraction

from sympy.polys.domains import QQ, QQ_I

ZERO = QQ_I(0, 0)
ONE = QQ_I(1, 0)
I = QQ_I(0, 1)


def parse_rational(x) -> Fraction:
    """Parse ``"p/q"``, ints or Fractions exactly.  Floats are rejected."""
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x).strip())


def _qq(x):
    f = parse_rational(x)
    return QQ(f.numerator, f.denominator)


def cq(re=0, im=0):
    """Build a Gaussian rational from exact real and imaginary parts."""
    return QQ_I(_qq(re), _qq(im))


def real_part(z) -> Fraction:
    return Fraction(int(z.x.numerator), int(z.x.denominator))


def imag_part(z) -> Fraction:
    return Fraction(int(z.y.numerator), int(z.y.denominator))


def as_fraction(z) -> Fraction:
    if z.y:
        raise ValueError(f"{z} is not real")
    return real_part(z)


def fmt_rational(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def fmt_scalar(z) -> list[str]:
    return [fmt_rational(real_part(z)), fmt_rational(imag_part(z))]


def to_scalar(x):
    """Coerce ints, Fractions, "p/q" strings or QQ_I elements to QQ_I."""
    if hasattr(x, "y") and hasattr(x, "x"):
        return x
    return cq(x)
