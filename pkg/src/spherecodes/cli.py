"""Command-line interface: ``spherecodes <command> ...``.

Exit codes: 0 success (valid code / certified bound), 1 negative result
(invalid code, inapplicable or infeasible bound), 2 usage or input error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import catalog as cat
from .algebra import AlgebraDescriptor
from .angles import parse_fraction, theta_from_pi_fraction
from .bounds import (
    PfenderCertificate,
    certificate_from_dict,
    nc_pfender_check,
    nc_spec_from_dict,
    optimize_delsarte,
    pfender_bound,
)
from .codes import ClassicalCode, verify_classical, verify_modular, verify_modular_norm_only
from .errors import DomainError, FormatError, InfeasibleError, NumericalError, ShapeError, SphereCodesError
from .gegenbauer import expand, gegenbauer, orthogonality_integral
from .polynomial import parse_coefficients
from .serialization import code_to_dict, dumps, load_code, load_json, save

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(SphereCodesError):
    pass


# -- output ------------------------------------------------------------------


def _table(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, val in obj.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_table(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(_table(item, indent + 1))
                lines.append("")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(line for line in lines)


def _emit(args, obj: dict) -> None:
    if args.format == "json":
        sys.stdout.write(dumps(obj))
    else:
        sys.stdout.write(_table(obj).rstrip() + "\n")


def _theta_from_args(args, required: bool = True):
    """(theta, exact cos or None) from --theta-pi-frac / --cos-theta."""
    pi_frac = getattr(args, "theta_pi_frac", None)
    cos_text = getattr(args, "cos_theta", None)
    if pi_frac is not None and cos_text is not None:
        raise UsageError("give only one of --theta-pi-frac and --cos-theta")
    try:
        if pi_frac is not None:
            theta = theta_from_pi_fraction(pi_frac)
            return theta, None
        if cos_text is not None:
            c = parse_fraction(cos_text)
            if not -1 <= c <= 1:
                raise UsageError(f"--cos-theta {cos_text} lies outside [-1, 1]")
            return math.acos(float(c)), c
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse angle: {exc}") from exc
    if required:
        raise UsageError("an angle is required: --theta-pi-frac p/q or --cos-theta p/q")
    return None, None


def _warn_theta(theta: float | None) -> None:
    if theta is not None and theta > math.pi + 1e-12:
        print(
            f"warning: theta = {theta:.6g} exceeds pi; only cos(theta) is used, so this equals the angle {2 * math.pi - theta:.6g}",
            file=sys.stderr,
        )


# -- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    code = load_code(args.code)
    _warn_theta(code.theta)
    if isinstance(code, ClassicalCode):
        report = verify_classical(code, tol=args.tol)
    elif args.mode == "norm":
        report = verify_modular_norm_only(code, tol=args.tol, threads=args.threads)
    else:
        report = verify_modular(code, tol=args.tol, threads=args.threads)
    _emit(args, report.to_dict())
    return EXIT_OK if report.valid else EXIT_NEGATIVE


# -- bound -------------------------------------------------------------------


def cmd_bound_lp(args) -> int:
    theta, cos_t = _theta_from_args(args)
    _warn_theta(theta)
    try:
        cert = optimize_delsarte(
            args.d, theta=theta, degree=args.degree, grid_size=args.grid_size, cos_theta=cos_t, max_rounds=args.max_rounds
        )
    except InfeasibleError as exc:
        _emit(args, {"applicable": False, "infeasible": True, "message": str(exc)})
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    out = cert.to_dict()
    if args.out:
        save(out, args.out)
    _emit(args, out)
    return EXIT_OK


def cmd_bound_pfender(args) -> int:
    theta, cos_t = _theta_from_args(args)
    _warn_theta(theta)
    try:
        phi = parse_coefficients(args.phi)
        c = parse_fraction(args.c)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --phi/--c: {exc}") from exc
    res = pfender_bound(PfenderCertificate(phi, c, theta=theta, cos_theta=cos_t), args.d)
    _emit(args, res.to_dict())
    return EXIT_OK if res.applicable else EXIT_NEGATIVE


def cmd_bound_nc(args) -> int:
    code = load_code(args.code)
    if isinstance(code, ClassicalCode):
        raise UsageError("nc-pfender expects a modular code file")
    raw = load_json(args.spec)
    try:
        spec = nc_spec_from_dict(raw)
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed spec: missing or wrong field {exc}", str(args.spec)) from exc
    res = nc_pfender_check(code, spec, tol=args.tol, threads=args.threads)
    _emit(args, res.to_dict())
    return EXIT_OK if res.applicable else EXIT_NEGATIVE


def cmd_bound_check(args) -> int:
    raw = load_json(args.cert)
    try:
        cert = certificate_from_dict(raw)
    except KeyError as exc:
        raise FormatError(f"missing field {exc}", str(args.cert)) from exc
    except DomainError as exc:
        _emit(args, {"applicable": False, "message": str(exc)})
        return EXIT_NEGATIVE
    _emit(args, {"applicable": True, "bound": str(cert.bound), "bound_float": float(cert.bound), "floor": cert.floor})
    return EXIT_OK


# -- gegenbauer --------------------------------------------------------------


def _exact_or_float(text: str):
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse {text!r} as a rational") from exc


def cmd_gegenbauer_eval(args) -> int:
    g = gegenbauer(args.n, args.k)
    r = _exact_or_float(args.r)
    value = g(r)
    _emit(args, {"n": args.n, "k": args.k, "coeffs": [str(x) for x in g.coeffs], "r": str(r), "value": str(value)})
    return EXIT_OK


def cmd_gegenbauer_expand(args) -> int:
    try:
        p = parse_coefficients(args.poly)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --poly: {exc}") from exc
    e = expand(p, args.n)
    _emit(args, {"n": args.n, "a": [str(x) for x in e.a]})
    return EXIT_OK


def cmd_gegenbauer_ortho(args) -> int:
    K = args.kmax
    M = [[orthogonality_integral(args.n, j, k) for k in range(K + 1)] for j in range(K + 1)]
    off = max((abs(M[j][k]) for j in range(K + 1) for k in range(K + 1) if j != k), default=0.0)
    _emit(args, {"n": args.n, "kmax": K, "matrix": M, "max_offdiagonal": off})
    return EXIT_OK


# -- catalog -----------------------------------------------------------------


def _algebra_from_args(args) -> AlgebraDescriptor:
    kind = args.kind or ("scalar" if args.m == 1 else "matrix")
    return AlgebraDescriptor(kind, args.m)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--name {args.name} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))


def build_catalog_code(args):
    name = args.name
    if name in cat.FIXED_NAMES:
        entry = cat.get(name)
        if entry.code is None:
            raise UsageError(f"{name} is listed for its size only ({entry.known_optimal}); no coordinates are generated")
        return entry.code
    if name == "simplex":
        _need(args, "d")
        return cat.gen_simplex(args.d)
    if name == "cross-polytope":
        _need(args, "d")
        return cat.gen_cross_polytope(args.d)
    if name == "kissing":
        _need(args, "d")
        return cat.gen_kissing(args.d)
    if name == "orthonormal":
        _need(args, "d")
        theta, _ = _theta_from_args(args, required=False)
        return cat.gen_orthonormal_modular(_algebra_from_args(args), args.d, math.pi / 2 if theta is None else theta)
    if name == "random":
        _need(args, "d", "n", "seed")
        rng = np.random.default_rng(args.seed)
        if args.m == 1 and args.kind in (None, "scalar"):
            theta, cos_t = _theta_from_args(args, required=False)
            max_cos = None if theta is None else float(cos_t if cos_t is not None else math.cos(theta))
            return cat.random_classical_code(args.d, args.n, rng, max_cos=max_cos)
        return cat.random_modular_code(_algebra_from_args(args), args.d, args.n, rng)
    raise UsageError(f"unknown catalog name {name!r}")


def cmd_catalog_gen(args) -> int:
    code = build_catalog_code(args)
    doc = code_to_dict(code)
    if args.out:
        save(doc, args.out)
        _emit(args, {"name": args.name, "n": code.n, "d": code.d, "theta": code.theta, "out": str(args.out)})
    else:
        sys.stdout.write(dumps(doc))
    return EXIT_OK


def cmd_catalog_list(args) -> int:
    rows = []
    for e in cat.catalog():
        rows.append(
            {
                "name": e.name,
                "n": e.known_optimal if e.code is None else e.code.n,
                "d": 24 if e.code is None else e.code.d,
                "theta": math.pi / 3 if e.code is None else e.code.theta,
                "known_optimal": e.known_optimal,
                "provenance": e.provenance,
            }
        )
    if args.format == "json":
        sys.stdout.write(dumps({"entries": rows, "parametric": list(cat.PARAMETRIC_NAMES) + ["kissing"]}))
    else:
        print(f"{'name':<15}{'n':>8}{'d':>4}{'theta':>10}{'known_optimal':>15}")
        for r in rows:
            ko = "-" if r["known_optimal"] is None else r["known_optimal"]
            print(f"{r['name']:<15}{r['n']:>8}{r['d']:>4}{r['theta']:>10.4f}{ko!s:>15}")
        print("parametric: " + ", ".join(list(cat.PARAMETRIC_NAMES) + ["kissing"]))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--threads", type=_positive_int, default=1)

    angle = argparse.ArgumentParser(add_help=False)
    angle.add_argument("--theta-pi-frac", metavar="P/Q", help="theta as a fraction of pi")
    angle.add_argument("--cos-theta", metavar="P/Q", help="exact rational cos(theta)")

    parser = argparse.ArgumentParser(prog="spherecodes", description="Spherical and modular code verification and bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a code file")
    p.add_argument("--code", required=True)
    p.add_argument("--mode", choices=("order", "norm"), default="order")
    p.set_defaults(func=cmd_verify)

    bound = sub.add_parser("bound", help="upper bounds on code sizes")
    bsub = bound.add_subparsers(dest="bound_command", required=True)
    p = bsub.add_parser("lp", parents=[common, angle], help="optimise a Delsarte certificate")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--grid-size", type=int)
    p.add_argument("--max-rounds", type=int, default=50)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bound_lp)
    p = bsub.add_parser("pfender", parents=[common, angle], help="dimension-free Pfender bound")
    p.add_argument("--phi", required=True, help='monomial coefficients, e.g. "0,1" for phi(r) = r')
    p.add_argument("--c", required=True)
    p.add_argument("--d", type=int, help="check the sum condition in this dimension (default: dimension-free criterion)")
    p.set_defaults(func=cmd_bound_pfender)
    p = bsub.add_parser("nc-pfender", parents=[common], help="Pfender bound for a modular code")
    p.add_argument("--code", required=True)
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_bound_nc)
    p = bsub.add_parser("check", parents=[common], help="re-verify a certificate file")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_bound_check)

    geg = sub.add_parser("gegenbauer", help="Gegenbauer polynomial utilities")
    gsub = geg.add_subparsers(dest="gegenbauer_command", required=True)
    p = gsub.add_parser("eval", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", required=True)
    p.set_defaults(func=cmd_gegenbauer_eval)
    p = gsub.add_parser("expand", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_gegenbauer_expand)
    p = gsub.add_parser("ortho", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kmax", type=int, default=8)
    p.set_defaults(func=cmd_gegenbauer_ortho)

    catp = sub.add_parser("catalog", help="reference codes")
    csub = catp.add_subparsers(dest="catalog_command", required=True)
    p = csub.add_parser("gen", parents=[common, angle])
    p.add_argument("--name", required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=_positive_int, default=1)
    p.add_argument("--kind", choices=("scalar", "diagonal", "matrix"))
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog_gen)
    p = csub.add_parser("list", parents=[common])
    p.set_defaults(func=cmd_catalog_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, FormatError, ShapeError, DomainError, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
