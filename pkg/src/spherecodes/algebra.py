"""Finite-dimensional C*-algebras realised as complex matrices.

Three kinds are supported: ``scalar`` (the complex numbers, m = 1),
``diagonal`` (the commutative algebra of diagonal m x m matrices) and
``matrix`` (the full algebra M_m(C)).  Elements are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, ShapeError

KINDS = ("scalar", "diagonal", "matrix")

DEFAULT_TOL = 1e-10
HERMITIAN_RTOL = 1e-10


@dataclass(frozen=True)
class AlgebraDescriptor:
    kind: str
    m: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown algebra kind {self.kind!r}")
        if not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise DomainError(f"matrix size must be a positive integer, got {self.m!r}")
        if self.kind == "scalar" and self.m != 1:
            raise DomainError("scalar algebra requires m = 1")

    def __str__(self):
        if self.kind == "scalar":
            return "C"
        if self.kind == "diagonal":
            return f"D_{self.m}(C)"
        return f"M_{self.m}(C)"


SCALAR = AlgebraDescriptor("scalar", 1)


def matrix_algebra(m: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("matrix", m)


def diagonal_algebra(m: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("diagonal", m)


class AlgebraElement:
    """An element of the algebra described by ``descriptor``.

    ``entries`` is copied into a read-only complex array.  For the diagonal
    kind the off-diagonal entries must be exactly zero.
    """

    __slots__ = ("descriptor", "entries")

    def __init__(self, descriptor: AlgebraDescriptor, entries):
        arr = np.array(entries, dtype=complex, copy=True)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        m = descriptor.m
        if arr.shape != (m, m):
            raise ShapeError(f"entries of shape {arr.shape} do not match {descriptor}")
        if descriptor.kind == "diagonal":
            off = arr - np.diag(np.diag(arr))
            if np.any(off != 0):
                raise DomainError("diagonal algebra element has nonzero off-diagonal entries")
        arr.setflags(write=False)
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    def __repr__(self):
        return f"AlgebraElement({self.descriptor}, {self.entries.tolist()!r})"

    # Arithmetic conveniences.  Products between elements use ``@``.
    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _same(self, other)
        return AlgebraElement(self.descriptor, self.entries + other.entries)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        _same(self, other)
        return AlgebraElement(self.descriptor, self.entries - other.entries)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.descriptor, -self.entries)

    def __mul__(self, scalar) -> AlgebraElement:
        if isinstance(scalar, AlgebraElement):
            return NotImplemented
        return AlgebraElement(self.descriptor, complex(scalar) * self.entries)

    __rmul__ = __mul__

    def __matmul__(self, other: AlgebraElement) -> AlgebraElement:
        return multiply(self, other)

    def allclose(self, other: AlgebraElement, atol: float = 1e-12) -> bool:
        _same(self, other)
        return bool(np.max(np.abs(self.entries - other.entries), initial=0.0) <= atol)


def _same(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.descriptor != b.descriptor:
        raise ShapeError(f"descriptor mismatch: {a.descriptor} vs {b.descriptor}")


def identity(descriptor: AlgebraDescriptor) -> AlgebraElement:
    return AlgebraElement(descriptor, np.eye(descriptor.m))


def zero(descriptor: AlgebraDescriptor) -> AlgebraElement:
    return AlgebraElement(descriptor, np.zeros((descriptor.m, descriptor.m)))


def scalar_unit(descriptor: AlgebraDescriptor, value) -> AlgebraElement:
    """``value`` times the unit of the algebra."""
    return AlgebraElement(descriptor, complex(value) * np.eye(descriptor.m))


def diag(values, kind: str = "diagonal") -> AlgebraElement:
    values = np.asarray(values, dtype=complex)
    return AlgebraElement(AlgebraDescriptor(kind, len(values)), np.diag(values))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _same(a, b)
    prod = a.entries @ b.entries
    if a.descriptor.kind == "diagonal":
        # exact zeros off the diagonal survive the product, but be explicit
        prod = np.diag(np.diag(prod))
    return AlgebraElement(a.descriptor, prod)


def adjoint(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.descriptor, a.entries.conj().T)


def hermitian_defect(a: AlgebraElement) -> float:
    return float(np.max(np.abs(a.entries - a.entries.conj().T), initial=0.0))


def is_hermitian(a: AlgebraElement) -> bool:
    scale = max(1.0, float(np.max(np.abs(a.entries), initial=0.0)))
    return hermitian_defect(a) <= HERMITIAN_RTOL * scale


def _require_hermitian(a: AlgebraElement) -> None:
    if not is_hermitian(a):
        raise DomainError(
            f"element is not Hermitian (defect {hermitian_defect(a):.3e}); inputs are never symmetrized"
        )


def hermitian_eigenvalues(a: AlgebraElement) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian element."""
    _require_hermitian(a)
    if a.descriptor.kind != "matrix":
        return np.sort(np.diag(a.entries).real)
    # LAPACK reads only the lower triangle; the Hermitian check above
    # guarantees the upper triangle agrees to within tolerance.
    return np.linalg.eigvalsh(a.entries)


def min_eigenvalue(a: AlgebraElement) -> float:
    return float(hermitian_eigenvalues(a)[0])


def operator_norm(a: AlgebraElement) -> float:
    """Largest singular value (equals max |eigenvalue| for Hermitian input)."""
    if a.descriptor.kind != "matrix":
        return float(np.max(np.abs(np.diag(a.entries))))
    return float(np.linalg.norm(a.entries, 2))


def trace(a: AlgebraElement) -> complex:
    return complex(np.trace(a.entries))


def is_positive(a: AlgebraElement, tol: float = DEFAULT_TOL, strict: bool = False) -> bool:
    """Membership in the positive cone.

    Default: smallest eigenvalue >= -tol * max(1, ||a||).  With ``strict`` the
    element must be diagonal (kind scalar or diagonal) and every diagonal
    entry, read as an exact binary rational, must be real and >= 0.
    """
    _require_hermitian(a)
    if strict:
        if a.descriptor.kind == "matrix":
            raise DomainError("strict positivity is only defined for scalar/diagonal elements")
        d = np.diag(a.entries)
        return all(z.imag == 0 and Fraction(float(z.real)) >= 0 for z in d)
    lam = hermitian_eigenvalues(a)
    return bool(lam[0] >= -tol * max(1.0, float(np.max(np.abs(lam)))))


def order_geq(a: AlgebraElement, b: AlgebraElement, tol: float = DEFAULT_TOL, strict: bool = False) -> bool:
    """``a >= b`` in the operator order, i.e. ``a - b`` is positive."""
    _same(a, b)
    _require_hermitian(a)
    _require_hermitian(b)
    return is_positive(a - b, tol, strict=strict)
