"""Upper bounds on the size of spherical codes.

* Delsarte LP certificates: P = sum a_k G_k^(d) with a_0 > 0, a_k >= 0 and
  P <= 0 on [-1, cos theta] give n <= P(1) / a_0.
* Pfender bounds: phi with nonnegative code sums and phi + c <= 0 on
  [-1, cos theta] give n <= (phi(1) + c) / c.
* The noncommutative Pfender bound over A^d, with phi evaluated on the Gram
  differences <x_j - x_k, x_j - x_k>, gives n <= (phi(0) + c) / c.

Sign conditions are certified exactly with Sturm sequences over the
rationals.  cos(theta) enters as an exact rational or as a rational upper
bound, so the certified interval always contains the true one.

In R^1 distinct unit vectors are antipodal, so the only inner product a
code can realise off the diagonal is -1; for d = 1 the sign conditions are
imposed on {-1} alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .angles import cos_upper, resolve_cos
from .codes import ClassicalCode, ModularCode, diff_eigenvalues, verify_classical
from .errors import DomainError, InfeasibleError, InternalError, NumericalError, ShapeError
from .gegenbauer import GegenbauerExpansion, expand, gegenbauer, gegenbauer_values
from .hilbert_module import UNIT_TOL, gram
from .polynomial import Polynomial, _frac, certify_nonpositive, certify_nonpositive_halfline
from .simplex import UnboundedError, exact_simplex, linprog

CHECK_TOL = 1e-9


@dataclass
class Condition:
    name: str
    satisfied: bool
    slack: float | None = None
    required: bool = True
    detail: str | None = None

    def to_dict(self) -> dict:
        slack = self.slack
        if isinstance(slack, float) and slack == 0:
            slack = 0.0  # drop the sign of negative zero
        out = {"name": self.name, "satisfied": self.satisfied, "slack": slack, "required": self.required}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class BoundResult:
    """A bound together with the conditions that justify it.

    ``bound`` is only set when every required condition holds.
    """

    bound: Fraction | None
    conditions: list[Condition]
    applicable: bool
    witness: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def floor(self) -> int | None:
        return None if self.bound is None else math.floor(self.bound)

    def condition(self, name: str) -> Condition:
        return next(c for c in self.conditions if c.name == name)

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "bound": None if self.bound is None else str(self.bound),
            "bound_float": None if self.bound is None else float(self.bound),
            "floor": self.floor,
            "conditions": [c.to_dict() for c in self.conditions],
            "witness": {k: _jsonable(v) for k, v in self.witness.items()},
            **{k: _jsonable(v) for k, v in self.notes.items()},
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return v


def _finish(bound: Fraction, conditions: list[Condition], witness=None, notes=None) -> BoundResult:
    ok = all(c.satisfied for c in conditions if c.required)
    return BoundResult(bound if ok else None, conditions, ok, witness or {}, notes or {})


def sign_interval(d: int, cos_t: Fraction) -> tuple[Fraction, Fraction]:
    """The set of off-diagonal inner products the sign condition must cover."""
    if d == 1:
        return Fraction(-1), Fraction(-1)
    return Fraction(-1), cos_t


# -- Delsarte ------------------------------------------------------------------


@dataclass
class DelsarteCertificate:
    d: int
    theta: float | None
    cos_theta: Fraction
    expansion: GegenbauerExpansion
    bound: Fraction
    lp_value: float | None = None
    rounds: int = 0
    grid_size: int = 0

    @property
    def floor(self) -> int:
        return math.floor(self.bound)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "theta": self.theta,
            "cos_theta": str(self.cos_theta),
            "degree": self.expansion.degree,
            "coeffs": [str(a) for a in self.expansion.a],
            "bound": str(self.bound),
            "bound_float": float(self.bound),
            "floor": self.floor,
            "lp_value": self.lp_value,
            "rounds": self.rounds,
            "grid_size": self.grid_size,
        }


def _as_expansion(a, d: int) -> GegenbauerExpansion:
    if isinstance(a, GegenbauerExpansion):
        if a.n != d:
            raise ShapeError(f"expansion in dimension {a.n} used with d = {d}")
        return a
    return GegenbauerExpansion(d, tuple(_frac(x) for x in a))


def verify_delsarte(a, d: int, theta: float | None = None, cos_theta=None) -> BoundResult:
    """Certify a Delsarte LP certificate exactly and return n <= P(1)/a_0.

    ``a`` holds exact rational Gegenbauer coefficients in dimension ``d``
    (floats are rejected).  cos(theta) is taken from ``cos_theta`` when given,
    otherwise from ``theta`` rounded upward.
    """
    exp = _as_expansion(a, d)
    cos_t = resolve_cos(theta, cos_theta)
    if not exp.a:
        raise DomainError("empty coefficient list")
    a0 = exp.a[0]
    rest = exp.a[1:]
    conds = [
        Condition("a0_positive", a0 > 0, float(a0)),
        Condition("a_nonnegative", all(x >= 0 for x in rest), float(min(rest)) if rest else None),
    ]
    P = exp.polynomial()
    lo, hi = sign_interval(d, cos_t)
    holds, witness, worst = certify_nonpositive(P, lo, hi)
    conds.append(Condition("sign_nonpositive", holds, -float(worst), detail=f"P <= 0 on [{lo}, {hi}]"))
    wit = {}
    if not holds:
        wit = {"r": witness, "P(r)": P(witness)}
    bound = P(Fraction(1)) / a0 if a0 > 0 else None
    return _finish(bound, conds, wit, {"cos_theta": cos_t, "d": d})


def chebyshev_grid(lo: float, hi: float, size: int) -> np.ndarray:
    """Chebyshev extreme points mapped to [lo, hi], endpoints included."""
    if hi <= lo or size <= 1:
        return np.array([lo])
    k = np.arange(size)
    x = np.cos(np.pi * k / (size - 1))[::-1]
    return lo + (hi - lo) * (x + 1) / 2


def _violations(coef_float: np.ndarray, lo: float, hi: float, tol: float) -> np.ndarray:
    """Local maxima of P on [lo, hi] (and the endpoints) where P > tol."""
    deg = coef_float.size - 1
    cand = [lo, hi]
    if deg >= 2 and hi > lo:
        dp = np.polynomial.polynomial.polyder(coef_float)
        roots = np.polynomial.polynomial.polyroots(dp)
        real = roots[np.abs(roots.imag) < 1e-7].real
        cand.extend(real[(real > lo) & (real < hi)].tolist())
        # dense safety net for clustered roots the root finder may blur
        cand.extend(np.linspace(lo, hi, 64 * deg + 1).tolist())
    cand = np.unique(np.asarray(cand))
    vals = _eval_expansion(coef_float, cand)
    return cand[vals > tol]


def _eval_expansion(mono_coef: np.ndarray, r: np.ndarray) -> np.ndarray:
    return np.polynomial.polynomial.polyval(r, mono_coef)


def _dyadic(r: np.ndarray) -> np.ndarray:
    """Round to multiples of 2^-30 so float and exact LP data coincide."""
    return np.round(np.asarray(r, dtype=float) * 2**30) / 2**30


class _ExactColumns:
    """Cache of exact G_k^(d)(r) for dyadic grid points."""

    def __init__(self, d: int, degree: int):
        self.polys = [gegenbauer(d, k) for k in range(1, degree + 1)]
        self.cache: dict[float, list[Fraction]] = {}

    def __call__(self, r: float) -> list[Fraction]:
        col = self.cache.get(r)
        if col is None:
            x = Fraction(r)
            col = self.cache[r] = [p(x) for p in self.polys]
        return col


def _lp_solve(d: int, degree: int, grid: np.ndarray, columns: _ExactColumns, prev_basis=None):
    """min sum_k a_k  s.t.  sum_k a_k G_k(r_i) <= -1, a_k >= 0 (a_0 = 1 fixed).

    Solved through its dual, max sum_i z_i s.t. sum_i z_i G_k(r_i) >= -1,
    z >= 0, which has one row per degree instead of one per grid point.  A
    float tableau solve supplies the starting basis for an exact rational
    solve; the a_k are the exact dual prices.  ``prev_basis`` is the
    optimal basis of an earlier round, keyed by grid value (or by row for
    slacks); it stays feasible when points are added, so it backs up a
    float basis that turns out infeasible in exact arithmetic.

    Returns (a, value, basis keys).
    """
    A = np.stack([gegenbauer_values(d, k, grid) for k in range(1, degree + 1)], axis=1)
    try:
        start = linprog(-np.ones(grid.size), -A.T, np.ones(degree)).basis
    except UnboundedError as exc:
        raise InfeasibleError(f"no degree-{degree} polynomial satisfies the sign condition on the grid") from exc
    except NumericalError:
        start = None
    exact_cols = [columns(float(r)) for r in grid]
    A_exact = [[-exact_cols[i][k] for i in range(grid.size)] for k in range(degree)]
    fallback = []
    if prev_basis is not None:
        index = {float(r): i for i, r in enumerate(grid)}
        mapped = [index.get(v) if kind == "g" else grid.size + v for kind, v in prev_basis]
        if None not in mapped:
            fallback.append(mapped)
    try:
        res = exact_simplex([-1] * grid.size, A_exact, [1] * degree, start_basis=start, fallback_bases=fallback)
    except UnboundedError as exc:
        raise InfeasibleError(f"no degree-{degree} polynomial satisfies the sign condition on the grid") from exc
    a = [Fraction(1)] + [-y for y in res.duals]
    keys = [("g", float(grid[j])) if j < grid.size else ("s", j - grid.size) for j in res.basis]
    return a, sum(a), keys


def _certify_rounded(a_exact: list[Fraction], d: int, cos_t: Fraction, lp_value: Fraction):
    """Rational certificate from the exact grid-LP optimum.

    Small-denominator snaps are tried first (optima are often simple
    rationals); otherwise a_0 is lowered until the sign condition certifies.
    """
    lp_value = float(lp_value)
    window = 1e-9 * max(1.0, abs(lp_value))
    for k in range(1, 13):
        den = 10**k
        a = [Fraction(1)] + [max(x, Fraction(0)).limit_denominator(den) for x in a_exact[1:]]
        res = verify_delsarte(a, d, cos_theta=cos_t)
        if res.applicable and float(res.bound) <= lp_value + window:
            return a, res
    a = [Fraction(1)] + [x.limit_denominator(10**15) for x in a_exact[1:]]
    P = GegenbauerExpansion(d, a).polynomial()
    lo, hi = sign_interval(d, cos_t)
    grid = np.linspace(float(lo), float(hi), 20001)
    peak = float(np.max(P(grid))) if hi > lo else float(P(lo))
    delta = Fraction(max(2 * peak, 1e-15)).limit_denominator(10**16)
    for _ in range(60):
        shifted = [a[0] - delta] + a[1:]
        if shifted[0] <= 0:
            break
        res = verify_delsarte(shifted, d, cos_theta=cos_t)
        if res.applicable:
            return shifted, res
        delta *= 2
    raise NumericalError("could not round the LP solution to a certified rational certificate")


_STALL_ROUNDS = 10
_STALL_VIOLATION = 1e-6


def optimize_delsarte(
    d: int,
    theta: float | None = None,
    degree: int = 6,
    grid_size: int | None = None,
    cos_theta=None,
    max_rounds: int = 50,
) -> DelsarteCertificate:
    """Best Delsarte certificate of the given degree, exactly verified.

    Minimises sum_k a_k G_k(1) with a_0 = 1, a_k >= 0 and P <= 0 on a
    Chebyshev grid of [-1, cos theta]; violations of the sign condition
    between grid points are added as cuts and the LP re-solved.  The exact
    grid optimum is then rounded to a nearby simple rational certificate when
    one verifies, otherwise a_0 is lowered until ``verify_delsarte`` accepts.

    Degenerate problems whose optimum has double roots can stall with a tiny
    persistent bump; after ``max_rounds`` such a run is still certified (at a
    bound a little above the LP optimum) instead of failing.
    """
    cos_t = resolve_cos(theta, cos_theta)
    if theta is None:
        theta = math.acos(float(cos_t))
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if d == 1:
        degree = min(degree, 1)
    if degree < 1:
        raise InfeasibleError("degree 0: P = a_0 > 0 cannot be nonpositive anywhere")
    if grid_size is None:
        grid_size = 8 * degree
    if grid_size < degree + 2:
        raise DomainError(f"grid_size must be >= degree + 2 = {degree + 2}")
    lo, hi = (float(x) for x in sign_interval(d, cos_t))
    grid = np.unique(_dyadic(chebyshev_grid(lo, hi, grid_size)))
    columns = _ExactColumns(d, degree)
    basis_mono = np.array(
        [np.pad(gegenbauer(d, k).float_coeffs(), (0, degree - k)) for k in range(degree + 1)]
    )

    keys, last_value, stalled = None, None, 0
    for rounds in range(1, max_rounds + 1):
        a_exact, value, keys = _lp_solve(d, degree, grid, columns, keys)
        stalled = stalled + 1 if value == last_value else 0
        last_value = value
        mono = np.array([float(x) for x in a_exact]) @ basis_mono
        scale = max(1.0, float(value))
        bad = _violations(mono, lo, hi, tol=1e-13 * scale)
        bad = np.setdiff1d(_dyadic(np.clip(bad, lo, hi)), grid)
        if bad.size == 0:
            break
        worst = float(np.max(_eval_expansion(mono, bad)))
        grid = np.unique(np.concatenate([grid, bad]))
    else:
        # Out of rounds.  If the grid optimum has not moved for a while and
        # only a small bump next to a double root remains (cuts shrink such
        # bumps linearly), exact certification absorbs the residue.
        if not (stalled >= _STALL_ROUNDS and worst <= _STALL_VIOLATION * scale):
            raise NumericalError(f"cutting-plane loop did not converge in {max_rounds} rounds")

    a, res = _certify_rounded(a_exact, d, cos_t, value)
    return DelsarteCertificate(
        d=d,
        theta=theta,
        cos_theta=cos_t,
        expansion=GegenbauerExpansion(d, tuple(a)),
        bound=res.bound,
        lp_value=float(value),
        rounds=rounds,
        grid_size=int(grid.size),
    )


def certificate_from_dict(data: dict) -> DelsarteCertificate:
    """Parse the certificate JSON layout and re-verify it exactly."""
    from .angles import parse_fraction, theta_from_pi_fraction

    d = int(data["d"])
    theta = data.get("theta")
    if isinstance(theta, str):
        theta = theta_from_pi_fraction(theta)
    cos_t = parse_fraction(data["cos_theta"]) if data.get("cos_theta") is not None else cos_upper(float(theta))
    exp = GegenbauerExpansion(d, tuple(parse_fraction(c) for c in data["coeffs"]))
    res = verify_delsarte(exp, d, cos_theta=cos_t)
    if not res.applicable:
        raise DomainError("certificate does not verify")
    if "bound" in data and parse_fraction(data["bound"]) != res.bound:
        raise DomainError(f"claimed bound {data['bound']} differs from verified {res.bound}")
    return DelsarteCertificate(d, theta, cos_t, exp, res.bound)


# -- Pfender (classical) -------------------------------------------------------


@dataclass
class PfenderCertificate:
    phi: Polynomial
    c: Fraction
    theta: float | None = None
    cos_theta: Fraction | None = None

    def __post_init__(self):
        self.c = _rational(self.c)
        if self.cos_theta is not None:
            self.cos_theta = _frac(self.cos_theta)

    def resolved_cos(self) -> Fraction:
        return resolve_cos(self.theta, self.cos_theta)


def _rational(x) -> Fraction:
    """Exact value; floats are read through their shortest decimal repr."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return _frac(x)


def pfender_bound(cert: PfenderCertificate, d: int | None = None) -> BoundResult:
    """Pfender bound n <= (phi(1) + c)/c.

    The sum condition is accepted through a sufficient criterion.  With a
    dimension d, phi must have nonnegative Gegenbauer coefficients in that
    dimension.  With d = None the bound is dimension-free and phi must have
    nonnegative monomial coefficients: each r^k is a positive-definite kernel
    on every sphere, so every code sum is then nonnegative whatever d is.
    phi + c <= 0 is certified exactly.
    """
    phi, c = cert.phi, cert.c
    cos_t = cert.resolved_cos()
    conds = [Condition("c_positive", c > 0, float(c))]
    wit = {}
    try:
        if d is None:
            coeffs, detail = tuple(phi.coeffs), "sufficient criterion: monomial coefficients of phi >= 0"
        else:
            coeffs, detail = expand(phi, d).a, "sufficient criterion: Gegenbauer coefficients of phi >= 0"
        min_coef = min(coeffs) if coeffs else Fraction(0)
        neg = [k for k, x in enumerate(coeffs) if x < 0]
        conds.append(Condition("sum_nonnegative", not neg, float(min_coef), detail=detail))
        if neg:
            wit["negative_coefficient_index"] = neg[0]
    except DomainError as exc:
        conds.append(Condition("sum_nonnegative", False, None, detail=str(exc)))
    lo, hi = sign_interval(d, cos_t) if d is not None else (Fraction(-1), cos_t)
    holds, witness, worst = certify_nonpositive(phi + c, lo, hi)
    conds.append(Condition("sign_nonpositive", holds, -float(worst), detail=f"phi + c <= 0 on [{lo}, {hi}]"))
    if not holds:
        wit["r"] = witness
        wit["phi(r)+c"] = phi(witness) + c
    bound = (phi(Fraction(1)) + c) / c if c > 0 else None
    notes = {"cos_theta": cos_t, "d": d}
    if bound is not None:
        notes["one_over_c_form"] = phi(Fraction(1)) + c <= 1
        notes["one_over_c"] = 1 / c
    return _finish(bound, conds, wit, notes)


def pfender_check_on_code(code: ClassicalCode, phi: Polynomial, c, tol: float = CHECK_TOL) -> BoundResult:
    """Check the Pfender hypotheses on one code and compare n with the bound.

    The sum condition is evaluated on the code's own Gram matrix.  When both
    conditions hold the theorem forces n <= bound; a violation raises
    InternalError.
    """
    rep = verify_classical(code)
    if not rep.valid:
        raise DomainError(f"code is not a valid ({code.d}, {code.n}, theta) code (margin {rep.margin:.3e})")
    c = _rational(c)
    n = code.n
    G = np.clip(code.points @ code.points.T, -1.0, 1.0)
    total = float(np.sum(phi(G)))
    conds = [
        Condition("c_positive", c > 0, float(c)),
        Condition("sum_nonnegative", total >= -tol * n * n, total, detail="evaluated on the code's Gram matrix"),
    ]
    cos_t = cos_upper(code.theta)
    lo, hi = sign_interval(code.d, cos_t)
    holds, witness, worst = certify_nonpositive(phi + c, lo, hi)
    conds.append(Condition("sign_nonpositive", holds, -float(worst), detail=f"phi + c <= 0 on [{lo}, {hi}]"))
    wit = {} if holds else {"r": witness, "phi(r)+c": phi(witness) + c}
    bound = (phi(Fraction(1)) + c) / c if c > 0 else None
    result = _finish(bound, conds, wit, {"n": n, "cos_theta": cos_t})
    if result.applicable:
        result.notes["slack"] = float(result.bound) - n
        result.notes["one_over_c_form"] = phi(Fraction(1)) + c <= 1
        if n > float(result.bound) + tol:
            raise InternalError(f"theorem violated: n = {n} > bound {result.bound}")
    return result


# -- Pfender (noncommutative) --------------------------------------------------


@dataclass
class NcPhiSpec:
    """phi on Gram differences: an explicit table, or g(reduce(a)) with
    reduce one of ``min_eig`` (smallest eigenvalue) or ``mean_trace``
    (trace / m).

    Table keys are index pairs (j, k) standing for the element
    <x_j - x_k, x_j - x_k>; a pair covers every other pair with the same
    element, so e.g. {(0, 0): 3, (0, 1): -1} defines phi on {0, 2*1}.
    """

    c: Fraction
    table: dict | None = None
    reduce: str | None = None
    g: Polynomial | None = None

    def __post_init__(self):
        self.c = _rational(self.c)
        if (self.table is None) == (self.g is None):
            raise DomainError("NcPhiSpec needs exactly one of a table or a spectral g")
        if self.table is not None:
            self.table = {tuple(int(i) for i in k): _rational(v) for k, v in self.table.items()}
        elif self.reduce not in ("min_eig", "mean_trace"):
            raise DomainError(f"unknown spectral reduction {self.reduce!r}")

    @property
    def form(self) -> str:
        return "table" if self.table is not None else "spectral"


def _same_element(x: np.ndarray, y: np.ndarray) -> bool:
    return float(np.max(np.abs(x - y))) <= UNIT_TOL


def _table_values(spec: NcPhiSpec, diff: np.ndarray) -> np.ndarray:
    n = diff.shape[0]
    listed = []
    for (p, q), v in sorted(spec.table.items()):
        if not (0 <= p < n and 0 <= q < n):
            raise DomainError(f"table pair ({p}, {q}) out of range for n = {n}")
        listed.append((p, q, v))
    for i, (p, q, v) in enumerate(listed):
        for p2, q2, v2 in listed[i + 1 :]:
            if v != v2 and _same_element(diff[p, q], diff[p2, q2]):
                raise DomainError(f"table is not a function: pairs ({p},{q}) and ({p2},{q2}) share an element")
    values = np.empty((n, n), dtype=object)
    missing = []
    for j in range(n):
        for k in range(n):
            v = spec.table.get((j, k), spec.table.get((k, j)))
            if v is None:
                v = next((v2 for p, q, v2 in listed if _same_element(diff[j, k], diff[p, q])), None)
            if v is None:
                missing.append((j, k))
            values[j, k] = v
    if missing:
        raise DomainError(f"table has no value for Gram differences at pairs {missing}")
    return values


def nc_pfender_check(code: ModularCode, spec: NcPhiSpec, tol: float = CHECK_TOL, threads: int = 1) -> BoundResult:
    """Pfender bound for a modular code, n <= (phi(0) + c)/c.

    phi is only needed on the finite set of Gram differences, so both
    hypotheses are decided on that set: sum_{j,k} phi(diff_jk) >= 0 and
    phi(diff_jk) + c <= 0 for j != k.  For spectral forms the condition over
    every positive a >= 2(1 - cos theta) 1 is also certified analytically
    and reported (not required).
    """
    g_data = gram(code.vectors, threads=threads)
    eye = np.eye(code.algebra.m)
    for j in range(code.n):
        defect = np.linalg.norm(g_data.inner[j, j] - eye, 2)
        if defect > UNIT_TOL:
            raise DomainError(f"vector {j} is not a unit vector (defect {defect:.3e})")
    n, c = code.n, spec.c
    diff = g_data.diff
    exact = spec.form == "table"
    if exact:
        values = _table_values(spec, diff)
        phi0 = values[0, 0]
    else:
        lam = diff_eigenvalues(g_data)
        t = lam[..., 0] if spec.reduce == "min_eig" else np.real(np.trace(diff, axis1=-2, axis2=-1)) / code.algebra.m
        values = spec.g(t)
        phi0 = spec.g(Fraction(0))

    total = sum(values.flat) if exact else float(np.sum(values))
    off = ~np.eye(n, dtype=bool)
    conds = [Condition("c_positive", c > 0, float(c))]
    sum_tol = 0 if exact else tol * n * n
    conds.append(Condition("sum_nonnegative", total >= -sum_tol, float(total)))
    wit = {}
    if n > 1:
        shifted = values[off] + c if exact else values[off] + float(c)
        idx = int(np.argmax([float(x) for x in shifted]))
        worst = shifted[idx]
        ok = worst <= (0 if exact else tol)
        conds.append(Condition("sign_nonpositive", bool(ok), -float(worst), detail="phi(diff_jk) + c <= 0, j != k"))
        if not ok:
            pairs = np.argwhere(off)
            wit["pair"] = [int(x) for x in pairs[idx]]
            wit["phi+c"] = worst if exact else float(worst)
    else:
        conds.append(Condition("sign_nonpositive", True, None, detail="no off-diagonal pairs"))

    cos_t = cos_upper(code.theta)
    threshold = 2 * (1 - cos_t)
    notes = {"n": n, "form": spec.form, "threshold": threshold}
    if not exact:
        holds, w, worst_v = certify_nonpositive_halfline(spec.g + c, threshold)
        detail = "g(t) + c <= 0 for all t >= 2(1 - cos theta)"
        if spec.reduce == "mean_trace":
            detail += " (sufficient for mean_trace)"
        conds.append(Condition("all_positive_elements", holds, -float(worst_v), required=False, detail=detail))

    bound = (_frac(phi0) + c) / c if c > 0 else None
    result = _finish(bound, conds, wit, notes)
    if result.applicable:
        result.notes["one_over_c_form"] = _frac(phi0) + c <= 1
        result.notes["slack"] = float(result.bound) - n
        if n > float(result.bound) + tol:
            raise InternalError(f"theorem violated: n = {n} > bound {result.bound}")
    return result


def nc_spec_from_dict(data: dict) -> NcPhiSpec:
    form = data["form"]
    if "table" in form:
        table = {tuple(item["pair"]): item["value"] for item in form["table"]}
        return NcPhiSpec(c=_parse_exact(data["c"]), table={k: _parse_exact(v) for k, v in table.items()})
    spectral = form["spectral"]
    g = Polynomial(_parse_exact(x) for x in spectral["g"])
    return NcPhiSpec(c=_parse_exact(data["c"]), reduce=spectral["reduce"], g=g)


def _parse_exact(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(repr(x))
    return _frac(x if not isinstance(x, str) else x.strip())


def nc_spec_to_dict(spec: NcPhiSpec) -> dict:
    if spec.table is not None:
        form = {"table": [{"pair": list(k), "value": str(v)} for k, v in sorted(spec.table.items())]}
    else:
        form = {"spectral": {"reduce": spec.reduce, "g": [str(x) for x in spec.g.coeffs]}}
    return {"c": str(spec.c), "form": form}


__all__ = [
    "BoundResult",
    "Condition",
    "DelsarteCertificate",
    "NcPhiSpec",
    "PfenderCertificate",
    "certificate_from_dict",
    "nc_pfender_check",
    "optimize_delsarte",
    "pfender_bound",
    "pfender_check_on_code",
    "verify_delsarte",
]
