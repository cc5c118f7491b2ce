"""Exact univariate polynomials over the rationals, with Sturm sign certification."""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational

from .errors import DomainError


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise DomainError(f"exact rational coefficient required, got {type(x).__name__} {x!r}")


class Polynomial:
    """A polynomial with exact rational coefficients, lowest degree first.

    >>> Polynomial([1, 0, 2])(Fraction(1, 2))
    Fraction(3, 2)
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def from_floats(cls, values) -> Polynomial:
        """Exact binary value of each float coefficient."""
        return cls(Fraction(float(v)) for v in values)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(str(c) for c in self.coeffs)}])"

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction input, float otherwise."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def __add__(self, other) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            s = _frac(other)
            return Polynomial(c * s for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def compose_neg(self) -> Polynomial:
        """p(-x)."""
        return Polynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(0, len(rem) - dq)
        lead = other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            q = rem[i] / lead
            if q:
                quot[i - dq] = q
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= q * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def monic(self) -> Polynomial:
        return self * (1 / self.lead) if self.coeffs else self

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'): same real roots, all simple."""
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    return p.divmod(g)[0]


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    """p, p', -rem(p, p'), ...; remainders are rescaled by positive constants only."""
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2].divmod(seq[-1])[1]
        if r.is_zero():
            break
        seq.append(-r * (1 / abs(r.lead)))
    return [s for s in seq if not s.is_zero()]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_changes(seq: list[Polynomial], x) -> int:
    """Sign changes of the sequence at x; x may be +-inf (as float)."""
    if x == float("inf"):
        signs = [_sign(s.lead) for s in seq]
    elif x == float("-inf"):
        signs = [_sign(s.lead) * (-1) ** s.degree for s in seq]
    else:
        signs = [_sign(s(x)) for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Polynomial, a, b) -> int:
    """Distinct real roots in the half-open interval (a, b]."""
    if p.is_zero():
        raise DomainError("the zero polynomial has infinitely many roots")
    seq = sturm_sequence(squarefree_part(p))
    return sign_changes(seq, a) - sign_changes(seq, b)


def isolate_roots(p: Polynomial, a: Fraction, b: Fraction, max_width=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating data for the distinct real roots of p in [a, b].

    Each item is (l, r): l == r marks an exact rational root; otherwise a
    single root lies strictly inside (l, r) and neither endpoint is a root.
    With ``max_width`` the open intervals are bisected until no wider than it.
    """
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)

    def count(lo, hi):
        return sign_changes(seq, lo) - sign_changes(seq, hi)

    out = []
    if q(a) == 0:
        out.append((a, a))
    stack = [(a, b, count(a, b))]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1 and q(hi) == 0:
            out.append((hi, hi))
            continue
        if k == 1 and q(lo) != 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if q(mid) == 0:
            out.append((mid, mid))
            stack.append((lo, mid, count(lo, mid) - 1))
        else:
            stack.append((lo, mid, count(lo, mid)))
        stack.append((mid, hi, count(mid, hi)))
    if max_width is not None:
        max_width = _frac(max_width)
        refined = []
        for lo, hi in out:
            # q is squarefree, so it changes sign across each isolated root
            s_lo = _sign(q(lo))
            while hi - lo > max_width:
                mid = (lo + hi) / 2
                s_mid = _sign(q(mid))
                if s_mid == 0:
                    lo = hi = mid
                elif s_mid == s_lo:
                    lo = mid
                else:
                    hi = mid
            refined.append((lo, hi))
        out = refined
    out.sort()
    return out


def max_on_interval_points(p: Polynomial, a: Fraction, b: Fraction) -> list[Fraction]:
    """Rational points of [a, b] such that every maximal subinterval on
    which p has constant sign contains at least one of them."""
    pts = {a, b}
    for lo, hi in isolate_roots(p, a, b):
        pts.add(lo)
        pts.add(hi)
    pts = sorted(pts)
    mids = [(x + y) / 2 for x, y in zip(pts, pts[1:])]
    return sorted(set(pts) | set(mids))


_CRIT_WIDTH = Fraction(1, 2**40)


def certify_nonpositive(p: Polynomial, a, b) -> tuple[bool, Fraction | None, Fraction]:
    """Decide p(r) <= 0 for every r in [a, b], exactly.

    Returns (holds, witness, worst) where ``witness`` is a rational point with
    p(witness) > 0 when the condition fails.  ``worst`` approximates the
    maximum of p on [a, b] from below: p is also probed next to each critical
    point, located to within 2^-40.  The decision itself only uses signs.
    """
    a, b = _frac(a), _frac(b)
    if a > b:
        raise DomainError(f"empty interval [{a}, {b}]")
    if p.is_zero():
        return True, None, Fraction(0)
    best_x, best_v = None, None
    for x in max_on_interval_points(p, a, b):
        v = p(x)
        if best_v is None or v > best_v:
            best_x, best_v = x, v
    if best_v > 0:
        return False, best_x, best_v
    dp = p.derivative()
    if not dp.is_zero():
        for lo, hi in isolate_roots(dp, a, b, max_width=_CRIT_WIDTH):
            best_v = max(best_v, p(lo), p(hi))
    return True, None, best_v


def cauchy_root_bound(p: Polynomial) -> Fraction:
    """Every real root has absolute value below this bound."""
    if p.degree <= 0:
        return Fraction(1)
    lead = abs(p.lead)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


def certify_nonpositive_halfline(p: Polynomial, a) -> tuple[bool, Fraction | None, Fraction]:
    """Decide p(t) <= 0 for every t >= a, exactly."""
    a = _frac(a)
    if p.is_zero():
        return True, None, Fraction(0)
    bound = max(cauchy_root_bound(p), abs(a)) + 1
    if p.lead > 0 and p.degree >= 1:
        # eventually positive: beyond every root p has the sign of its lead
        return False, bound, p(bound)
    return certify_nonpositive(p, a, a + 2 * bound)


def parse_coefficients(text: str) -> Polynomial:
    """'0,1' or '["1/2", "3"]' style lists, lowest degree first."""
    text = text.strip()
    if text.startswith("["):
        items = json.loads(text)
    else:
        items = [t for t in text.split(",") if t.strip()]
    return Polynomial(str(i) for i in items)
