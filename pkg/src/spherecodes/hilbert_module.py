"""The standard Hilbert C*-module A^d.

Vectors are d-tuples over an algebra A.  The A-valued inner product is
linear in the first slot, <x, y> = sum_i x_i y_i^*, and the norm is
||x|| = ||<x, x>||^(1/2).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraDescriptor,
    AlgebraElement,
    identity,
    operator_norm,
)
from .errors import NumericalError, ShapeError

UNIT_TOL = 1e-9


class ModuleVector:
    """A d-tuple of algebra elements, stored as a read-only (d, m, m) array."""

    __slots__ = ("descriptor", "blocks")

    def __init__(self, descriptor: AlgebraDescriptor, components):
        if isinstance(components, np.ndarray) and components.ndim == 3:
            blocks = np.array(components, dtype=complex, copy=True)
        else:
            comps = list(components)
            if not comps:
                raise ShapeError("module vectors need at least one component")
            rows = []
            for c in comps:
                if isinstance(c, AlgebraElement):
                    if c.descriptor != descriptor:
                        raise ShapeError(f"component over {c.descriptor}, expected {descriptor}")
                    rows.append(c.entries)
                else:
                    rows.append(AlgebraElement(descriptor, c).entries)
            blocks = np.array(rows, dtype=complex)
        m = descriptor.m
        if blocks.ndim != 3 or blocks.shape[1:] != (m, m) or blocks.shape[0] < 1:
            raise ShapeError(f"blocks of shape {blocks.shape} do not fit {descriptor}")
        if descriptor.kind != "matrix":
            # validates diagonal structure
            for b in blocks:
                AlgebraElement(descriptor, b)
        blocks.setflags(write=False)
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleVector is immutable")

    @property
    def d(self) -> int:
        return self.blocks.shape[0]

    @property
    def components(self) -> list[AlgebraElement]:
        return [AlgebraElement(self.descriptor, b) for b in self.blocks]

    def __sub__(self, other: ModuleVector) -> ModuleVector:
        _check(self, other)
        return ModuleVector(self.descriptor, self.blocks - other.blocks)

    def __add__(self, other: ModuleVector) -> ModuleVector:
        _check(self, other)
        return ModuleVector(self.descriptor, self.blocks + other.blocks)

    def __repr__(self):
        return f"ModuleVector({self.descriptor}, d={self.d})"


def _check(x: ModuleVector, y: ModuleVector) -> None:
    if x.descriptor != y.descriptor:
        raise ShapeError(f"descriptor mismatch: {x.descriptor} vs {y.descriptor}")
    if x.d != y.d:
        raise ShapeError(f"rank mismatch: {x.d} vs {y.d}")


def basis_vector(descriptor: AlgebraDescriptor, d: int, i: int) -> ModuleVector:
    """The standard basis vector e_i (unit in slot i, zero elsewhere)."""
    blocks = np.zeros((d, descriptor.m, descriptor.m), dtype=complex)
    blocks[i] = np.eye(descriptor.m)
    return ModuleVector(descriptor, blocks)


def from_real_vector(v) -> ModuleVector:
    """Embed a real vector of R^d into C^d, the module over the scalar algebra."""
    from .algebra import SCALAR

    v = np.asarray(v, dtype=float)
    return ModuleVector(SCALAR, v.reshape(-1, 1, 1))


def inner_product(x: ModuleVector, y: ModuleVector) -> AlgebraElement:
    _check(x, y)
    total = np.einsum("iab,icb->ac", x.blocks, y.blocks.conj())
    return AlgebraElement(x.descriptor, total)


def module_norm(x: ModuleVector) -> float:
    return float(np.sqrt(operator_norm(inner_product(x, x))))


def unit_defect(x: ModuleVector) -> float:
    """Operator-norm distance of <x, x> from the unit."""
    return operator_norm(inner_product(x, x) - identity(x.descriptor))


@dataclass(frozen=True)
class GramData:
    """Pairwise inner products and Gram differences of a list of vectors.

    ``inner[j, k]`` is the m x m matrix of <x_j, x_k>; ``diff[j, k]`` is
    <x_j - x_k, x_j - x_k>, computed directly.
    """

    descriptor: AlgebraDescriptor
    inner: np.ndarray
    diff: np.ndarray

    @property
    def n(self) -> int:
        return self.inner.shape[0]

    def inner_element(self, j: int, k: int) -> AlgebraElement:
        return AlgebraElement(self.descriptor, self.inner[j, k])

    def diff_element(self, j: int, k: int) -> AlgebraElement:
        return AlgebraElement(self.descriptor, self.diff[j, k])


def _stack(vectors) -> np.ndarray:
    vectors = list(vectors)
    if not vectors:
        raise ShapeError("gram of an empty list")
    first = vectors[0]
    for v in vectors[1:]:
        _check(first, v)
    return np.stack([v.blocks for v in vectors])


def _gram_rows(X: np.ndarray, rows: range):
    Xc = X.conj()
    inner = np.einsum("jiab,kicb->jkac", X[rows.start:rows.stop], Xc)
    D = X[rows.start:rows.stop, None] - X[None, :]
    diff = np.einsum("jkiab,jkicb->jkac", D, D.conj())
    return inner, diff


def gram(vectors, threads: int = 1) -> GramData:
    """Inner products and Gram differences for every ordered pair.

    Rows are split across ``threads`` workers; the result does not depend on
    the split.  When every vector is a unit vector the direct differences are
    cross-checked against 2 - <x_j, x_k> - <x_k, x_j>.
    """
    vectors = list(vectors)
    X = _stack(vectors)
    n = X.shape[0]
    desc = vectors[0].descriptor
    threads = max(1, int(threads))
    if threads == 1 or n < 2 * threads:
        inner, diff = _gram_rows(X, range(0, n))
    else:
        bounds = np.linspace(0, n, threads + 1).astype(int)
        chunks = [range(bounds[i], bounds[i + 1]) for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: _gram_rows(X, r), chunks))
        inner = np.concatenate([p[0] for p in parts])
        diff = np.concatenate([p[1] for p in parts])
    if desc.kind != "matrix":
        # keep the diagonal structure exact
        mask = np.eye(desc.m, dtype=bool)
        inner = np.where(mask, inner, 0)
        diff = np.where(mask, diff, 0)

    eye = np.eye(desc.m)
    diag_defect = max(np.linalg.norm(inner[j, j] - eye, 2) for j in range(n))
    if diag_defect <= UNIT_TOL:
        via_identity = 2 * eye - inner - np.swapaxes(inner, 0, 1)
        scale = max(1.0, float(np.max(np.abs(diff))))
        err = float(np.max(np.abs(via_identity - diff)))
        # rounding in <x_j,x_j> feeds both sides, so allow the unit tolerance
        if err > 4 * UNIT_TOL * scale:
            raise NumericalError(f"Gram difference identity fails by {err:.3e}")
    inner.setflags(write=False)
    diff.setflags(write=False)
    return GramData(desc, inner, diff)
