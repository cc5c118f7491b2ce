"""Angles and their cosines, exact where possible.

Certification needs a rational number that is *at least* cos(theta): the
sign conditions are then checked on an interval containing the true one.
cos(p pi / q) is rational only for the values 0, +-1/2, +-1, and those are
returned exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

# 8 ulps at 1.0; math.cos is accurate to about one ulp
_WIDEN = Fraction(1, 2**50)
_SNAP_DENOMINATOR = 1000

_EXACT = {
    Fraction(0): Fraction(1),
    Fraction(1, 3): Fraction(1, 2),
    Fraction(1, 2): Fraction(0),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(1): Fraction(-1),
    Fraction(4, 3): Fraction(-1, 2),
    Fraction(3, 2): Fraction(0),
    Fraction(5, 3): Fraction(1, 2),
}


def parse_fraction(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(text)
    return Fraction(str(text).strip())


def exact_cos_pi_fraction(frac) -> Fraction | None:
    """cos(frac * pi) when it is rational, else None."""
    frac = parse_fraction(frac) % 2
    return _EXACT.get(frac)


def theta_from_pi_fraction(frac) -> float:
    return float(parse_fraction(frac)) * math.pi


def cos_upper(theta: float) -> Fraction:
    """A rational >= cos(theta).

    Angles within 1e-12 of a rational multiple of pi with rational cosine
    snap to the exact value (a float near pi/3 is meant as pi/3), as do
    cosines within 1e-12 of a rational with denominator at most 1000 (so
    acos(-1/3) means -1/3); anything else is widened upward from math.cos.
    """
    t = theta / math.pi
    snap = Fraction(t).limit_denominator(6)
    if abs(t - float(snap)) < 1e-12:
        exact = exact_cos_pi_fraction(snap)
        if exact is not None:
            return exact
    c = math.cos(theta)
    near = Fraction(c).limit_denominator(_SNAP_DENOMINATOR)
    if abs(c - float(near)) < 1e-12:
        return near
    return min(Fraction(1), Fraction(c) + _WIDEN)


def resolve_cos(theta: float | None, cos_theta=None) -> Fraction:
    """Exact cos given explicitly, otherwise ``cos_upper(theta)``."""
    if cos_theta is not None:
        c = parse_fraction(cos_theta)
        if not -1 <= c <= 1:
            raise DomainError(f"cos(theta) = {c} outside [-1, 1]")
        return c
    if theta is None:
        raise DomainError("either theta or cos_theta is required")
    return cos_upper(theta)


def theta_from_cos(cos_theta) -> float:
    return math.acos(max(-1.0, min(1.0, float(cos_theta))))
