"""Reference codes: extremal classical configurations and modular examples."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraDescriptor, matrix_algebra
from .angles import theta_from_cos
from .codes import ClassicalCode, ModularCode, max_admissible_cos
from .errors import DomainError
from .hilbert_module import ModuleVector, basis_vector

KISSING_NUMBERS = {1: 2, 2: 6, 3: 12, 4: 24, 8: 240, 24: 196560}

PI_3 = math.pi / 3


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    code: ClassicalCode | ModularCode | None
    provenance: str
    known_optimal: int | None = None

    @property
    def size(self) -> int | None:
        return None if self.code is None else self.code.n


def _normalize(P) -> np.ndarray:
    P = np.asarray(P, dtype=float)
    return P / np.linalg.norm(P, axis=1, keepdims=True)


def gen_simplex(d: int) -> ClassicalCode:
    """d + 1 unit vectors with pairwise inner products -1/d."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    # orthonormal basis of the hyperplane sum(x) = 0 in R^(d+1) (Helmert rows)
    H = np.zeros((d, d + 1))
    for i in range(1, d + 1):
        H[i - 1, :i] = 1.0
        H[i - 1, i] = -i
        H[i - 1] /= math.sqrt(i * (i + 1))
    verts = np.eye(d + 1) - 1.0 / (d + 1)
    pts = _normalize(verts @ H.T)
    return ClassicalCode(d, math.acos(-1.0 / d), pts)


def gen_cross_polytope(d: int) -> ClassicalCode:
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    eye = np.eye(d)
    pts = np.vstack([eye, -eye])
    return ClassicalCode(d, math.pi / 2, pts)


def _hexagon() -> np.ndarray:
    t = np.arange(6) * (math.pi / 3)
    return np.stack([np.cos(t), np.sin(t)], axis=1)


def _icosahedron() -> np.ndarray:
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for s1, s2 in itertools.product((1, -1), repeat=2):
        base = (0.0, s1 * 1.0, s2 * phi)
        for shift in range(3):
            pts.append(base[-shift:] + base[:-shift] if shift else base)
    return _normalize(pts)


def _cuboctahedron() -> np.ndarray:
    pts = set()
    for i, j in itertools.combinations(range(3), 2):
        for s1, s2 in itertools.product((1, -1), repeat=2):
            v = [0, 0, 0]
            v[i], v[j] = s1, s2
            pts.add(tuple(v))
    return _normalize(sorted(pts))


def _d4() -> np.ndarray:
    """Minimal vectors of D4: all (+-1, +-1, 0, 0) and their permutations."""
    pts = set()
    for i, j in itertools.combinations(range(4), 2):
        for s1, s2 in itertools.product((1, -1), repeat=2):
            v = [0] * 4
            v[i], v[j] = s1, s2
            pts.add(tuple(v))
    return _normalize(sorted(pts))


def _e8() -> np.ndarray:
    """The 240 roots of E8: 112 of type (+-1, +-1, 0^6) and 128 of type
    (+-1/2)^8 with an even number of minus signs."""
    pts = set()
    for i, j in itertools.combinations(range(8), 2):
        for s1, s2 in itertools.product((1.0, -1.0), repeat=2):
            v = [0.0] * 8
            v[i], v[j] = s1, s2
            pts.add(tuple(v))
    for signs in itertools.product((0.5, -0.5), repeat=8):
        if sum(1 for s in signs if s < 0) % 2 == 0:
            pts.add(signs)
    return _normalize(sorted(pts))


def gen_kissing(d: int) -> ClassicalCode:
    """Kissing configuration at theta = pi/3 for d in {1, 2, 3, 4, 8}."""
    builders = {
        1: lambda: np.array([[1.0], [-1.0]]),
        2: _hexagon,
        3: _icosahedron,
        4: _d4,
        8: _e8,
    }
    if d not in builders:
        raise DomainError(f"no kissing configuration generator for d = {d}")
    return ClassicalCode(d, PI_3, builders[d]())


def gen_orthonormal_modular(alg: AlgebraDescriptor, d: int, theta: float) -> ModularCode:
    """Standard basis e_1, ..., e_d of A^d; a modular code for theta < pi/2."""
    vectors = tuple(basis_vector(alg, d, i) for i in range(d))
    return ModularCode(alg, d, theta, vectors)


def gen_norm_order_gap_pair() -> ModularCode:
    """{(I), (diag(-1, 1))} in M_2(C)^1 at theta = pi/2.

    The Gram difference is diag(4, 0): its norm clears sqrt(2) but it does
    not dominate 2I.
    """
    alg = matrix_algebra(2)
    v1 = ModuleVector(alg, [np.eye(2)])
    v2 = ModuleVector(alg, [np.diag([-1.0, 1.0])])
    return ModularCode(alg, 1, math.pi / 2, (v1, v2))


# -- random codes --------------------------------------------------------------


def random_classical_code(d: int, n: int, rng: np.random.Generator, max_cos: float | None = None, max_tries: int = 100000) -> ClassicalCode:
    """Gaussian points normalised to the sphere, rejecting any point whose
    inner product with an accepted one exceeds ``max_cos``.

    theta is set to acos(max_cos) when given, otherwise to the code's own
    minimal angle.
    """
    pts: list[np.ndarray] = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise DomainError(f"could not place {n} points in R^{d} with max inner product {max_cos}")
        v = rng.standard_normal(d)
        nv = np.linalg.norm(v)
        if nv == 0:
            continue
        v = v / nv
        if max_cos is not None and pts and np.max(np.asarray(pts) @ v) > max_cos:
            continue
        pts.append(v)
    P = np.asarray(pts)
    if max_cos is None:
        G = P @ P.T
        np.fill_diagonal(G, -1.0)
        max_cos = float(np.max(G)) if n > 1 else -1.0
    return ClassicalCode(d, theta_from_cos(max_cos), P)


def random_unit_module_vector(alg: AlgebraDescriptor, d: int, rng: np.random.Generator) -> ModuleVector:
    """A random x with <x, x> = 1.

    Matrix kind: the first m rows of a random unitary of size d*m, cut into
    d blocks.  Diagonal/scalar kinds: one real unit vector of R^d per
    diagonal slot.
    """
    m = alg.m
    if alg.kind == "matrix":
        Z = rng.standard_normal((d * m, d * m)) + 1j * rng.standard_normal((d * m, d * m))
        Q, R = np.linalg.qr(Z)
        Q = Q * (np.diag(R) / np.abs(np.diag(R)))
        rows = Q[:m]  # m x dm with orthonormal rows
        blocks = np.stack([rows[:, i * m : (i + 1) * m] for i in range(d)])
        return ModuleVector(alg, blocks)
    U = rng.standard_normal((m, d))
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    blocks = np.zeros((d, m, m), dtype=complex)
    idx = np.arange(m)
    blocks[:, idx, idx] = U.T
    return ModuleVector(alg, blocks)


def random_modular_code(alg: AlgebraDescriptor, d: int, n: int, rng: np.random.Generator) -> ModularCode:
    """n random unit vectors with theta chosen just large enough to be valid."""
    vectors = tuple(random_unit_module_vector(alg, d, rng) for _ in range(n))
    code = ModularCode(alg, d, 0.0, vectors)
    if n < 2:
        return code
    cos_t = min(1.0, max_admissible_cos(code) + 1e-9)
    return code.with_theta(theta_from_cos(cos_t))


# -- registry ------------------------------------------------------------------


def _entries():
    yield CatalogEntry("antipodal", gen_kissing(1), "kissing configuration in R^1", KISSING_NUMBERS[1])
    yield CatalogEntry("hexagon", gen_kissing(2), "kissing configuration in R^2", KISSING_NUMBERS[2])
    yield CatalogEntry("icosahedron", gen_kissing(3), "icosahedron vertices (golden ratio)", KISSING_NUMBERS[3])
    yield CatalogEntry("cuboctahedron", ClassicalCode(3, PI_3, _cuboctahedron()), "FCC minimal vectors", KISSING_NUMBERS[3])
    yield CatalogEntry("d4", gen_kissing(4), "D4 root system minimal vectors", KISSING_NUMBERS[4])
    yield CatalogEntry("e8", gen_kissing(8), "E8 root system", KISSING_NUMBERS[8])
    yield CatalogEntry("leech", None, "Leech lattice minimal vectors (metadata only)", KISSING_NUMBERS[24])
    yield CatalogEntry("gap-pair", gen_norm_order_gap_pair(), "M_2(C) pair passing the norm check but not the order check")


FIXED_NAMES = ("antipodal", "hexagon", "icosahedron", "cuboctahedron", "d4", "e8", "leech", "gap-pair")
PARAMETRIC_NAMES = ("simplex", "cross-polytope", "orthonormal", "random")

KISSING_BY_NAME = {"antipodal": 1, "hexagon": 2, "icosahedron": 3, "d4": 4, "e8": 8}


def catalog() -> list[CatalogEntry]:
    return list(_entries())


def get(name: str) -> CatalogEntry:
    for entry in _entries():
        if entry.name == name:
            return entry
    raise DomainError(f"unknown catalog entry {name!r}; known: {', '.join(FIXED_NAMES + PARAMETRIC_NAMES)}")
