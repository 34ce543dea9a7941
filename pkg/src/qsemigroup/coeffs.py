"""Exact Gaussian-rational coefficients, backed by sympy's QQ_I domain."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from sympy.polys.domains import QQ, QQ_I

ZERO = QQ_I.zero
ONE = QQ_I.one


def coeff(re=0, im=0):
    """Build a coefficient from ints, Fractions, existing coefficients or complex ints."""
    if isinstance(re, type(ONE)) and im == 0:
        return re
    if isinstance(re, complex):
        if re.real != int(re.real) or re.imag != int(re.imag):
            raise TypeError("float coefficients are not exact; pass Fractions")
        re, im = int(re.real), int(re.imag)
    return QQ_I(_q(re), _q(im))


def _q(x):
    if isinstance(x, float):
        raise TypeError("float coefficients are not exact; pass Fractions")
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def conj(c):
    return QQ_I(c.x, -c.y)


def real_imag(c) -> tuple[Fraction, Fraction]:
    return (
        Fraction(int(c.x.numerator), int(c.x.denominator)),
        Fraction(int(c.y.numerator), int(c.y.denominator)),
    )


def to_complex(c) -> complex:
    re, im = real_imag(c)
    return complex(float(re), float(im))


def to_json(c) -> dict:
    re, im = real_imag(c)
    return {
        "re": {"num": re.numerator, "den": re.denominator},
        "im": {"num": im.numerator, "den": im.denominator},
    }


def from_json(obj):
    if isinstance(obj, (int, str)):
        return coeff(Fraction(obj))
    re = obj.get("re", 0)
    im = obj.get("im", 0)
    as_frac = lambda v: Fraction(v["num"], v["den"]) if isinstance(v, dict) else Fraction(v)
    return coeff(as_frac(re), as_frac(im))


def denominator(c) -> int:
    """Least common denominator of the real and imaginary parts."""
    re, im = real_imag(c)
    return lcm(re.denominator, im.denominator)


def sort_key(c):
    re, im = real_imag(c)
    return (re, im)
