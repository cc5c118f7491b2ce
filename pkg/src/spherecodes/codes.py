"""Spherical codes in R^d and in the Hilbert module A^d, and their verifiers.

A classical (d, n, theta)-code is a set of n unit vectors of R^d whose
pairwise inner products are at most cos(theta).  A modular code over A^d
has <x_j, x_j> = 1 and Gram differences <x_j - x_k, x_j - x_k> dominating
2(1 - cos theta) times the unit in the operator order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import SCALAR, AlgebraDescriptor, diagonal_algebra
from .errors import DomainError, NumericalError, ShapeError
from .hilbert_module import ModuleVector, from_real_vector, gram

DEFAULT_TOL = 1e-9
UNIT_NORM_TOL = 1e-9


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0 <= theta < 2 * math.pi:
        raise DomainError(f"theta = {theta} outside [0, 2pi)")
    return theta


@dataclass(frozen=True, eq=False)
class ClassicalCode:
    d: int
    theta: float
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float, copy=True)
        if pts.ndim == 1 and self.d == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[1] != self.d or pts.shape[0] < 1:
            raise ShapeError(f"points of shape {pts.shape} do not form a code in R^{self.d}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "theta", _check_theta(self.theta))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def with_theta(self, theta: float) -> ClassicalCode:
        return ClassicalCode(self.d, theta, self.points)


@dataclass(frozen=True, eq=False)
class ModularCode:
    algebra: AlgebraDescriptor
    d: int
    theta: float
    vectors: tuple

    def __post_init__(self):
        vecs = tuple(self.vectors)
        if not vecs:
            raise ShapeError("a modular code needs at least one vector")
        for v in vecs:
            if not isinstance(v, ModuleVector):
                raise ShapeError("modular code vectors must be ModuleVector instances")
            if v.descriptor != self.algebra or v.d != self.d:
                raise ShapeError(f"vector over {v.descriptor}^{v.d}, expected {self.algebra}^{self.d}")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "theta", _check_theta(self.theta))

    @property
    def n(self) -> int:
        return len(self.vectors)

    def with_theta(self, theta: float) -> ModularCode:
        return ModularCode(self.algebra, self.d, theta, self.vectors)


@dataclass
class VerificationReport:
    """Outcome of a verification.

    ``margin`` is the signed slack of the binding inequality (``inf`` when
    there are no pairs); ``valid`` holds exactly when ``margin >= -tol``.
    """

    valid: bool
    worst_pair: tuple[int, int] | None
    margin: float
    mode: str
    n: int
    tol: float
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "valid": self.valid,
            "n": self.n,
            "margin": None if math.isinf(self.margin) else self.margin,
            "worst_pair": None if self.worst_pair is None else list(self.worst_pair),
            "tol": self.tol,
            **self.details,
        }


def _worst(values: np.ndarray, n: int):
    """Minimum over the upper triangle, ties broken by lexicographic (j, k)."""
    if n < 2:
        return math.inf, None
    iu = np.triu_indices(n, 1)
    flat = values[iu]
    idx = int(np.argmin(flat))
    return float(flat[idx]), (int(iu[0][idx]), int(iu[1][idx]))


def verify_classical(code: ClassicalCode, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Check <x_j, x_k> <= cos(theta) for all j != k.

    The equivalent distance form ||x_j - x_k|| >= sqrt(2(1 - cos theta)) is
    evaluated independently and must agree.
    """
    P = code.points
    norms = np.linalg.norm(P, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1) > UNIT_NORM_TOL)
    if bad.size:
        raise DomainError(f"rows {bad.tolist()} are not unit vectors (norm {norms[bad[0]]!r})")
    cos_t = math.cos(code.theta)
    G = P @ P.T
    margin, pair = _worst(cos_t - G, code.n)
    valid = margin >= -tol

    threshold = math.sqrt(2 * (1 - cos_t))
    details = {"cos_theta": cos_t, "distance_threshold": threshold}
    if code.n >= 2:
        diffs = P[:, None, :] - P[None, :, :]
        d2 = np.einsum("jki,jki->jk", diffs, diffs)
        min_d2, _ = _worst(d2, code.n)
        # squared form: d^2 = 2 - 2<x,y>, so the inner-product slack tol maps to 2 tol
        valid_dist = min_d2 >= 2 * (1 - cos_t) - 2 * tol
        if valid_dist != valid:
            raise NumericalError(
                f"inner-product and distance forms disagree (margin {margin:.3e}, min dist^2 {min_d2:.17g})"
            )
        details["min_distance"] = math.sqrt(max(min_d2, 0.0))
        details["max_inner_product"] = cos_t - margin
    return VerificationReport(valid, pair, margin, "classical", code.n, tol, details)


def _unit_defects(g) -> np.ndarray:
    eye = np.eye(g.descriptor.m)
    return np.array([np.linalg.norm(g.inner[j, j] - eye, 2) for j in range(g.n)])


def _hermitian_batch(mats: np.ndarray, what: str) -> None:
    if mats.size == 0:
        return
    defect = np.max(np.abs(mats - np.conj(np.swapaxes(mats, -1, -2))))
    scale = max(1.0, float(np.max(np.abs(mats))))
    if defect > 1e-10 * scale:
        raise NumericalError(f"{what} not Hermitian (defect {defect:.3e})")


def diff_eigenvalues(g) -> np.ndarray:
    """Ascending eigenvalues of every Gram difference, shape (n, n, m)."""
    _hermitian_batch(g.diff, "Gram difference")
    if g.descriptor.kind != "matrix":
        return np.sort(np.diagonal(g.diff, axis1=-2, axis2=-1).real, axis=-1)
    return np.linalg.eigvalsh(g.diff)


def _modular_report(code: ModularCode, tol: float, mode: str, threads: int) -> VerificationReport:
    g = gram(code.vectors, threads=threads)
    cos_t = math.cos(code.theta)
    target = 2 * (1 - cos_t)
    lam = diff_eigenvalues(g)
    if mode == "modular-order":
        # halved so that over the scalar algebra it equals the classical margin
        slack = (lam[..., 0] - target) / 2
    else:
        norms = np.max(np.abs(lam), axis=-1)
        slack = np.sqrt(norms) - math.sqrt(target)
    margin, pair = _worst(slack, code.n)
    details = {"cos_theta": cos_t, "threshold": target if mode == "modular-order" else math.sqrt(target)}

    defects = _unit_defects(g)
    worst_unit = int(np.argmax(defects))
    details["unit_defect"] = float(defects[worst_unit])
    if defects[worst_unit] > tol:
        # an off-unit vector is reported as the binding (j, j) pair
        margin, pair = -float(defects[worst_unit]), (worst_unit, worst_unit)
    return VerificationReport(bool(margin >= -tol), pair, margin, mode, code.n, tol, details)


def verify_modular(code: ModularCode, tol: float = DEFAULT_TOL, threads: int = 1) -> VerificationReport:
    """Check the unit condition and <x_j - x_k, x_j - x_k> >= 2(1 - cos theta) 1.

    The margin is half the smallest eigenvalue of diff - 2(1 - cos theta) 1
    over all pairs, which puts it on the same scale as the classical margin
    cos(theta) - <x_j, x_k>.
    """
    return _modular_report(code, tol, "modular-order", threads)


def verify_modular_norm_only(code: ModularCode, tol: float = DEFAULT_TOL, threads: int = 1) -> VerificationReport:
    """The weaker norm condition ||x_j - x_k|| >= sqrt(2(1 - cos theta)).

    Implied by the order condition but not equivalent to it.
    """
    return _modular_report(code, tol, "modular-norm", threads)


def max_admissible_cos(code: ModularCode) -> float:
    """Largest cos(theta) at which the Gram differences still satisfy the order condition."""
    if code.n < 2:
        return -1.0
    lam = diff_eigenvalues(gram(code.vectors))
    min_eig, _ = _worst(lam[..., 0], code.n)
    return 1 - min_eig / 2


def embed_classical(code: ClassicalCode) -> ModularCode:
    """The same code viewed in the module C^d over the scalar algebra."""
    vectors = tuple(from_real_vector(p) for p in code.points)
    return ModularCode(SCALAR, code.d, code.theta, vectors)


def diagonal_product(codes) -> ModularCode:
    """Stack m classical codes into one modular code over diagonal m x m matrices.

    Component i of vector j is diag(codes[0].points[j, i], ..., codes[m-1].points[j, i]).
    """
    codes = list(codes)
    if not codes:
        raise ShapeError("diagonal_product needs at least one code")
    first = codes[0]
    for c in codes[1:]:
        if (c.d, c.n) != (first.d, first.n) or not math.isclose(c.theta, first.theta, abs_tol=1e-15):
            raise ShapeError("codes must share d, n and theta")
    for s, c in enumerate(codes):
        rep = verify_classical(c)
        if not rep.valid:
            raise DomainError(f"code {s} fails verification (margin {rep.margin:.3e})")
    m = len(codes)
    stacked = np.stack([c.points for c in codes], axis=-1)  # (n, d, m)
    desc = diagonal_algebra(m)
    vectors = []
    for j in range(first.n):
        blocks = np.zeros((first.d, m, m), dtype=complex)
        idx = np.arange(m)
        blocks[:, idx, idx] = stacked[j]
        vectors.append(ModuleVector(desc, blocks))
    return ModularCode(desc, first.d, first.theta, tuple(vectors))


def permute(code, order):
    """Reorder the code's vectors; used by invariance tests."""
    order = list(order)
    if isinstance(code, ClassicalCode):
        return ClassicalCode(code.d, code.theta, code.points[order])
    return ModularCode(code.algebra, code.d, code.theta, tuple(code.vectors[i] for i in order))
