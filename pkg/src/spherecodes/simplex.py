"""Dense simplex solvers with Bland's anti-cycling rule.

``linprog`` is a two-phase float tableau method for
min c.x s.t. A_ub x <= b_ub, A_eq x = b_eq, x >= 0.  ``exact_simplex`` is
a revised method over the rationals, typically warm-started from the float
basis.  Both are deterministic: pivots depend only on the input data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InfeasibleError, NumericalError, SphereCodesError


class UnboundedError(SphereCodesError):
    """The objective is unbounded below on the feasible set."""


@dataclass
class LPResult:
    x: np.ndarray
    fun: float
    basis: list[int]
    iterations: int
    marginals: np.ndarray  # d fun / d b_ub, one per inequality row


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    for i in range(T.shape[0]):
        if i != row and T[i, col] != 0:
            T[i] -= T[i, col] * T[row]


def _run(T: np.ndarray, basis: list[int], ncols: int, tol: float, max_iter: int) -> int:
    """Bland's-rule iterations on tableau T (objective in the last row)."""
    m = T.shape[0] - 1
    for it in range(max_iter):
        cost = T[-1, :ncols]
        entering = next((j for j in range(ncols) if cost[j] < -tol), None)
        if entering is None:
            return it
        col = T[:m, entering]
        best, leave = None, None
        for i in range(m):
            if col[i] > tol:
                ratio = T[i, -1] / col[i]
                if best is None or ratio < best - 1e-14 or (abs(ratio - best) <= 1e-14 and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedError("linear program is unbounded")
        _pivot(T, leave, entering)
        basis[leave] = entering
    raise NumericalError(f"simplex did not terminate in {max_iter} iterations")


def linprog(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, tol: float = 1e-10, max_iter: int = 50000) -> LPResult:
    c = np.asarray(c, dtype=float)
    nv = c.size
    A_ub = np.zeros((0, nv)) if A_ub is None else np.asarray(A_ub, dtype=float).reshape(-1, nv)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float)
    A_eq = np.zeros((0, nv)) if A_eq is None else np.asarray(A_eq, dtype=float).reshape(-1, nv)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    mu, me = A_ub.shape[0], A_eq.shape[0]
    m = mu + me

    # columns: originals | slacks (one per <= row) | artificials (as needed)
    rows = np.zeros((m, nv + mu))
    rhs = np.concatenate([b_ub, b_eq])
    rows[:mu, :nv] = A_ub
    rows[:mu, nv:] = np.eye(mu)
    rows[mu:, :nv] = A_eq
    neg = rhs < 0
    rows[neg] *= -1
    rhs = np.abs(rhs)

    basis: list[int] = [-1] * m
    for i in range(mu):
        if not neg[i]:
            basis[i] = nv + i
    need_art = [i for i in range(m) if basis[i] < 0]
    na = len(need_art)
    ncols = nv + mu + na
    T = np.zeros((m + 1, ncols + 1))
    T[:m, : nv + mu] = rows
    T[:m, -1] = rhs
    for a, i in enumerate(need_art):
        T[i, nv + mu + a] = 1.0
        basis[i] = nv + mu + a

    iters = 0
    if na:
        # phase 1: minimise the sum of artificials
        T[-1, nv + mu : ncols] = 1.0
        for i in need_art:
            T[-1] -= T[i]
        iters += _run(T, basis, ncols, tol, max_iter)
        scale = max(1.0, float(np.max(np.abs(rhs), initial=0.0)))
        if -T[-1, -1] > 1e-9 * scale:
            raise InfeasibleError(f"linear program is infeasible (phase-1 residual {-T[-1, -1]:.3e})")
        # drive remaining artificials out of the basis
        for i in range(m):
            if basis[i] >= nv + mu:
                cand = next((j for j in range(nv + mu) if abs(T[i, j]) > 1e-9), None)
                if cand is not None:
                    _pivot(T, i, cand)
                    basis[i] = cand
        keep = [i for i in range(m) if basis[i] < nv + mu]
        T = np.vstack([T[keep], T[-1:]])
        T = np.delete(T, np.s_[nv + mu : ncols], axis=1)
        basis = [basis[i] for i in keep]
        ncols = nv + mu

    # phase 2
    T[-1, :] = 0.0
    T[-1, :nv] = c
    for i, b in enumerate(basis):
        if T[-1, b] != 0:
            T[-1] -= T[-1, b] * T[i]
    iters += _run(T, basis, ncols, tol, max_iter)

    x = np.zeros(ncols)
    for i, b in enumerate(basis):
        x[b] = T[i, -1]
    x = x[:nv]
    # the reduced cost of slack i is -y_i whether or not row i was negated
    marginals = -T[-1, nv : nv + mu].copy()
    return LPResult(x=x, fun=float(c @ x), basis=basis, iterations=iters, marginals=marginals)


@dataclass
class ExactLPResult:
    x: list
    fun: Fraction
    basis: list[int]
    duals: list  # y with y_i = d fun / d b_i
    iterations: int


def _gauss_jordan_inverse(M: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def exact_simplex(c, A, b, start_basis=None, max_iter: int = 10000, fallback_bases=()) -> ExactLPResult:
    """Revised simplex in exact rational arithmetic with Bland's rule.

    Solves  min c.x  s.t.  A x <= b,  x >= 0  for b >= 0.  Columns are the
    originals followed by one slack per row.  ``start_basis`` (for example
    the final basis of a float solve) is used when it is nonsingular and
    feasible; otherwise each of ``fallback_bases`` is tried in turn, and
    the slack basis is the last resort.
    """
    c = [Fraction(x) for x in c]
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    m, nv = len(A), len(c)
    if any(x < 0 for x in b):
        raise ValueError("exact_simplex needs b >= 0")

    def column(j):
        if j < nv:
            return [A[i][j] for i in range(m)]
        return [Fraction(int(i == j - nv)) for i in range(m)]

    cost = c + [Fraction(0)] * m
    cols = [column(j) for j in range(nv + m)]

    def matvec(Minv, v):
        return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in Minv]

    basis, Binv = None, None
    candidates = ([start_basis] if start_basis is not None else []) + list(fallback_bases)
    for cand in candidates:
        cand = list(cand)
        if len(cand) != m or len(set(cand)) != m or not all(0 <= j < nv + m for j in cand):
            continue
        inv = _gauss_jordan_inverse([[cols[j][i] for j in cand] for i in range(m)])
        if inv is not None and all(x >= 0 for x in matvec(inv, b)):
            basis, Binv = cand, inv
            break
    if basis is None:
        basis = [nv + i for i in range(m)]
        Binv = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]

    for it in range(max_iter):
        xB = matvec(Binv, b)
        cB = [cost[j] for j in basis]
        y = [sum((cB[i] * Binv[i][k] for i in range(m)), Fraction(0)) for k in range(m)]
        in_basis = set(basis)
        entering = None
        for j in range(nv + m):
            if j in in_basis:
                continue
            dj = cost[j] - sum((y[i] * cols[j][i] for i in range(m) if cols[j][i]), Fraction(0))
            if dj < 0:
                entering = j
                break
        if entering is None:
            x = [Fraction(0)] * (nv + m)
            for i, j in enumerate(basis):
                x[j] = xB[i]
            fun = sum((cost[j] * x[j] for j in range(nv)), Fraction(0))
            return ExactLPResult(x[:nv], fun, basis, y, it)
        u = matvec(Binv, cols[entering])
        leave, best = None, None
        for i in range(m):
            if u[i] > 0:
                ratio = xB[i] / u[i]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise UnboundedError("linear program is unbounded")
        # eta update of the explicit inverse
        piv = u[leave]
        Binv[leave] = [x / piv for x in Binv[leave]]
        for i in range(m):
            if i != leave and u[i] != 0:
                f = u[i]
                Binv[i] = [x - f * y_ for x, y_ in zip(Binv[i], Binv[leave])]
        basis[leave] = entering
    raise NumericalError(f"exact simplex did not terminate in {max_iter} iterations")
