"""Gegenbauer polynomials G_k^(n), normalised so that G_k^(n)(1) = 1.

They are built from the three-term recursion

    G_0 = 1,  G_1 = r,
    G_k = ((2k + n - 4) r G_{k-1} - (k - 1) G_{k-2}) / (k + n - 3),

and are orthogonal on [-1, 1] for the weight (1 - r^2)^((n - 3)/2).  Used
with codes, n is the ambient dimension of the code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, NumericalError
from .polynomial import Polynomial, _frac

_R = Polynomial([0, 1])


def _check(n: int, k: int) -> None:
    if k < 0:
        raise DomainError(f"degree must be >= 0, got {k}")
    if n < 2 and not (n == 1 and k <= 1):
        # at n = 1 the denominator k + n - 3 vanishes for k = 2
        raise DomainError(f"dimension parameter n = {n} is not supported for degree {k}")


@lru_cache(maxsize=None)
def _coeffs(n: int, k: int) -> tuple[Fraction, ...]:
    if k == 0:
        return (Fraction(1),)
    if k == 1:
        return (Fraction(0), Fraction(1))
    g1 = Polynomial(_coeffs(n, k - 1))
    g2 = Polynomial(_coeffs(n, k - 2))
    g = (_R * g1 * (2 * k + n - 4) - g2 * (k - 1)) * Fraction(1, k + n - 3)
    return g.coeffs


def gegenbauer(n: int, k: int) -> Polynomial:
    """G_k^(n) with exact rational coefficients."""
    _check(n, k)
    return Polynomial(_coeffs(n, k))


def evaluate(p: Polynomial, r):
    """Horner evaluation, exact for rational r."""
    return p(r)


def gegenbauer_values(n: int, k: int, r) -> np.ndarray:
    """G_k^(n) at float points via the recursion itself (stable on [-1, 1])."""
    _check(n, k)
    r = np.asarray(r, dtype=float)
    prev, cur = np.ones_like(r), r.copy()
    if k == 0:
        return prev
    for j in range(2, k + 1):
        prev, cur = cur, ((2 * j + n - 4) * r * cur - (j - 1) * prev) / (j + n - 3)
    return cur


@dataclass(frozen=True)
class GegenbauerExpansion:
    """P = sum_k a[k] G_k^(n)."""

    n: int
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(_frac(x) for x in self.a))
        if self.a:
            _check(self.n, len(self.a) - 1)

    def polynomial(self) -> Polynomial:
        p = Polynomial()
        for k, ak in enumerate(self.a):
            if ak:
                p = p + gegenbauer(self.n, k) * ak
        return p

    @property
    def degree(self) -> int:
        return len(self.a) - 1


def expand(p: Polynomial, n: int) -> GegenbauerExpansion:
    """Coordinates of p in the basis G_0^(n), ..., G_deg^(n), by back-substitution."""
    if p.is_zero():
        return GegenbauerExpansion(n, ())
    _check(n, p.degree)
    rem = p
    a = [Fraction(0)] * (p.degree + 1)
    for k in range(p.degree, -1, -1):
        if rem.degree < k:
            continue
        g = gegenbauer(n, k)
        a[k] = rem.coeffs[k] / g.lead
        rem = rem - g * a[k]
    if not rem.is_zero():
        raise NumericalError("exact back-substitution left a remainder")
    return GegenbauerExpansion(n, tuple(a))


def orthogonality_integral(n: int, j: int, k: int, tol: float = 1e-12, max_order: int = 4096) -> float:
    """Integral of G_j G_k (1 - r^2)^((n-3)/2) over [-1, 1].

    With r = cos t the integrand becomes G_j(cos t) G_k(cos t) sin^(n-2)(t)
    on [0, pi], which is smooth even for n = 2.  Gauss-Legendre order is
    doubled until successive estimates agree to ``tol``.
    """
    if n < 2:
        raise DomainError(f"orthogonality weight needs n >= 2, got {n}")
    _check(n, j)
    _check(n, k)
    if (j + k) % 2 == 1:
        # odd integrand, even weight
        return 0.0

    def estimate(order):
        x, w = np.polynomial.legendre.leggauss(order)
        t = (x + 1) * (math.pi / 2)
        r = np.cos(t)
        f = gegenbauer_values(n, j, r) * gegenbauer_values(n, k, r) * np.sin(t) ** (n - 2)
        return float(np.dot(w, f) * (math.pi / 2))

    order = max(16, j + k + n)
    prev = estimate(order)
    while order < max_order:
        order *= 2
        cur = estimate(order)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    raise NumericalError(f"quadrature did not converge for (n, j, k) = ({n}, {j}, {k}) by order {max_order}")


def kernel_sum(code, k: int) -> float:
    """sum over all i, j of G_k^(d)(<x_i, x_j>) for a classical code in R^d."""
    P = code.points
    G = np.clip(P @ P.T, -1.0, 1.0)
    return float(np.sum(gegenbauer_values(code.d, k, G)))
