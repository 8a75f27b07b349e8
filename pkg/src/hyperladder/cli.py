"""Command line entry point: ``hyperladder <list|table|eval|verify>``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import HyperladderError
from .exact import as_fraction
from .factorization import adjoint_scaled_factorization, mu_bracket
from .families import (
    DEFAULT_PARAMS,
    FAMILY_NAMES,
    PARAM_NAMES,
    FamilySpec,
    canonical_name,
    check_degree,
    default_family,
    lambda_n,
    norm_ratio,
    recurrence_coeffs,
)
from .ladder_poly import family_polys
from .orthonormal import ortho_eval
from .verify import (
    DEFAULT_N_MAX,
    DEFAULT_TOLERANCE,
    format_rational,
    params_json,
    parse_suites,
    verify_all,
    verify_family,
)

PARAM_FLAGS = ("alpha", "beta", "mu", "gamma", "p", "N")


class UsageError(Exception):
    pass


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _given_params(args) -> dict:
    return {k: getattr(args, k) for k in PARAM_FLAGS if getattr(args, k) is not None}


def _family_from_args(args) -> FamilySpec:
    if args.family is None:
        raise UsageError("--family is required")
    name = canonical_name(args.family)
    given = _given_params(args)
    unknown = sorted(set(given) - set(PARAM_NAMES[name]))
    if unknown:
        raise UsageError(f"{name} takes no parameter {', '.join('--' + k for k in unknown)}")
    return default_family(name, **given)


# list ---------------------------------------------------------------------

def cmd_list(args) -> tuple[str, int]:
    rows = []
    for name in FAMILY_NAMES:
        F = default_family(name)
        rows.append({
            "name": name,
            "kind": F.kind,
            "params": list(PARAM_NAMES[name]),
            "defaults": {k: format_rational(v) for k, v in DEFAULT_PARAMS[name].items()},
            "max_degree": "N" if name == "kravchuk" else ("N-1" if F.is_finite else None),
        })
    if args.format == "json":
        return _dump_json(rows), 0
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "kind", "params", "defaults", "max_degree"])
        for r in rows:
            defaults = ";".join(f"{k}={v}" for k, v in r["defaults"].items())
            w.writerow([r["name"], r["kind"], ";".join(r["params"]), defaults, r["max_degree"] or ""])
        return buf.getvalue(), 0
    lines = []
    for r in rows:
        params = ", ".join(f"{k}={v}" for k, v in r["defaults"].items()) or "-"
        lines.append(f"{r['name']:<10} {r['kind']:<10} {params}")
    return "\n".join(lines) + "\n", 0


# table --------------------------------------------------------------------

def _opt(fn):
    try:
        v = fn()
    except (HyperladderError, ZeroDivisionError):
        return None
    return None if v is None else format_rational(v)


def table_rows(F: FamilySpec, n_max: int, adjoint_normalized: bool = False) -> list:
    check_degree(F, n_max, "n-max")
    seq = family_polys(F, n_max)
    consts = {}

    def mu(n):
        if n not in consts:
            c = adjoint_scaled_factorization(F, n) if adjoint_normalized else mu_bracket(F, n)
            consts[n] = c
        return consts[n]

    rows = []
    for n in range(n_max + 1):
        alpha, beta, gamma = recurrence_coeffs(F, n)
        rows.append({
            "n": n,
            "coeffs": [format_rational(c) for c in seq[n].coeffs],
            "lambda": format_rational(lambda_n(F, n)),
            "alpha": format_rational(alpha),
            "beta": format_rational(beta),
            "gamma": format_rational(gamma),
            "r": _opt(lambda: norm_ratio(F, n)),
            "mu": _opt(lambda: mu(n).mu),
            "nu": _opt(lambda: mu(n - 1).nu) if n else None,
        })
    return rows


def cmd_table(args) -> tuple[str, int]:
    F = _family_from_args(args)
    n_max = args.n_max
    if n_max is None:
        n_max = 5 if F.max_degree is None else min(5, F.max_degree)
    rows = table_rows(F, n_max, args.adjoint_normalized)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "coeff", "lambda", "alpha", "beta", "gamma", "r", "mu", "nu"])
        for r in rows:
            rest = [r[k] or "" for k in ("lambda", "alpha", "beta", "gamma", "r", "mu", "nu")]
            for k, c in enumerate(r["coeffs"]):
                w.writerow([r["n"], k, c] + rest)
        return buf.getvalue(), 0
    if args.format == "text":
        lines = [F.label()]
        for r in rows:
            lines.append(f"n={r['n']} y=[{', '.join(r['coeffs'])}] lambda={r['lambda']} alpha={r['alpha']} "
                         f"beta={r['beta']} gamma={r['gamma']} r={r['r']} mu={r['mu']} nu={r['nu']}")
        return "\n".join(lines) + "\n", 0
    doc = {
        "engine_version": __version__,
        "family": F.name,
        "params": params_json(F),
        "adjoint_normalized": args.adjoint_normalized,
        "rows": rows,
    }
    return _dump_json(doc), 0


# eval ---------------------------------------------------------------------

def _parse_points(F: FamilySpec, text: str) -> list:
    out = []
    for raw in text.split(","):
        raw = raw.strip()
        if not raw:
            continue
        try:
            v = as_fraction(raw)
        except (TypeError, ValueError, ZeroDivisionError):
            raise UsageError(f"cannot read point {raw!r}") from None
        if F.is_discrete:
            if v.denominator != 1:
                raise UsageError(f"point {raw} is not on the lattice of {F.label()}")
            out.append((raw, int(v)))
        else:
            out.append((raw, float(v)))
    if not out:
        raise UsageError("--points is empty")
    return out


def cmd_eval(args) -> tuple[str, int]:
    F = _family_from_args(args)
    if args.n is None:
        raise UsageError("--n is required")
    if args.points is None:
        raise UsageError("--points is required")
    check_degree(F, args.n)
    values = []
    for raw, at in _parse_points(F, args.points):
        try:
            values.append((raw, ortho_eval(F, args.n, at)))
        except HyperladderError as exc:
            raise UsageError(f"point {raw}: {exc}") from None
    if args.format == "json":
        doc = {
            "engine_version": __version__,
            "family": F.name,
            "params": params_json(F),
            "n": args.n,
            "points": [raw for raw, _ in values],
            "values": [v for _, v in values],
        }
        return _dump_json(doc), 0
    if args.format == "csv":
        return "point,value\n" + "".join(f"{raw},{v!r}\n" for raw, v in values), 0
    if len(values) == 1:
        return f"{values[0][1]!r}\n", 0
    return "".join(f"{raw} {v!r}\n" for raw, v in values), 0


# verify -------------------------------------------------------------------

def _failure_text(check: dict) -> str:
    if check.get("corrected") and not check.get("documented"):
        return f"undocumented correction ({check.get('note', '')})"
    return str(check["residual"])


def _report_text(report: dict) -> str:
    reports = report.get("families", [report])
    lines = []
    for r in reports:
        label = r["family"] + ("" if not r["params"] else "(" + ", ".join(
            f"{k}={v}" for k, v in sorted(r["params"].items())) + ")")
        for s in r["suites"]:
            failed = [c for c in s["checks"] if not c["pass"]]
            corrected = [c["identity"] for c in s["checks"] if c.get("corrected")]
            line = f"{label:<32} {s['name']:<15} {'PASS' if s['pass'] else 'FAIL'} {len(s['checks'])} checks"
            if corrected:
                line += f", corrected: {', '.join(corrected)}"
            lines.append(line)
            for c in failed:
                lines.append(f"    failed {c['identity']} n={c['n']}: {_failure_text(c)}")
    for s in report.get("families") and report["suites"] or []:
        failed = [c for c in s["checks"] if not c["pass"]]
        corrected = [c["identity"] for c in s["checks"] if c.get("corrected")]
        lines.append(f"{'generic':<32} {s['name']:<15} {'PASS' if s['pass'] else 'FAIL'} {len(s['checks'])} checks"
                     + (f", corrected: {', '.join(corrected)}" if corrected else ""))
        for c in failed:
            lines.append(f"    failed {c['identity']}: {_failure_text(c)}")
    lines.append("PASS" if report["pass"] else "FAIL")
    return "\n".join(lines) + "\n"


def _report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "suite", "identity", "n", "mode", "residual", "tolerance", "pass", "corrected"])
    reports = report.get("families", [report])
    extra = report["suites"] if "families" in report else []
    for r in reports:
        for s in r["suites"]:
            for c in s["checks"]:
                w.writerow([r["family"], s["name"], c["identity"], c["n"], c["mode"],
                            c["residual"] if isinstance(c["residual"], str) else repr(c["residual"]),
                            "" if c["tolerance"] is None else repr(c["tolerance"]),
                            str(c["pass"]).lower(), str(c.get("corrected", False)).lower()])
    for s in extra:
        for c in s["checks"]:
            w.writerow(["generic", s["name"], c["identity"], c["n"], c["mode"], c["residual"], "",
                        str(c["pass"]).lower(), str(c.get("corrected", False)).lower()])
    return buf.getvalue()


def cmd_verify(args) -> tuple[str, int]:
    try:
        suites = parse_suites(args.suites)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.tolerance is not None and not args.tolerance > 0:
        raise UsageError("--tolerance must be positive")
    tol = args.tolerance if args.tolerance is not None else DEFAULT_TOLERANCE
    n_max = args.n_max if args.n_max is not None else DEFAULT_N_MAX
    if n_max < 0:
        raise UsageError("--n-max must be non-negative")
    if args.family is not None and args.family.strip().lower() == "all":
        given = _given_params(args)
        per_family = {name: {k: v for k, v in given.items() if k in PARAM_NAMES[name]} for name in FAMILY_NAMES}
        report = verify_all(per_family, n_max, suites, tol, args.adjoint_normalized)
    else:
        F = _family_from_args(args)
        if args.n_max is None and F.max_degree is not None:
            # the default degree range stops at the top of a finite family
            n_max = min(n_max, F.max_degree)
        report = verify_family(F, n_max, suites, tol, args.adjoint_normalized)
    code = 0 if report["pass"] else 1
    if args.format == "text":
        return _report_text(report), code
    if args.format == "csv":
        return _report_csv(report), code
    return _dump_json(report), code


# argument parsing ---------------------------------------------------------

def _rational_arg(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperladder",
        description="Exact ladder operators and factorizations of classical orthogonal polynomials.",
        allow_abbrev=False,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="<list|table|eval|verify>")
    sub.required = True

    def common(p, default_format):
        p.add_argument("--family", help="family name (verify also accepts 'all')")
        for key in ("alpha", "beta", "mu", "gamma", "p"):
            p.add_argument(f"--{key}", type=_rational_arg, metavar="p/q")
        p.add_argument("--N", type=_int_arg, metavar="int")
        p.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
        p.add_argument("--adjoint-normalized", action="store_true",
                       help="rescale ladder and factorization output by 2n/lambda_2n")

    p = sub.add_parser("list", help="list families and their parameters", allow_abbrev=False)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")

    p = sub.add_parser("table", help="exact polynomial and ladder data per degree", allow_abbrev=False)
    common(p, "json")
    p.add_argument("--n-max", type=_int_arg, metavar="int")

    p = sub.add_parser("eval", help="evaluate an orthonormal function", allow_abbrev=False)
    common(p, "text")
    p.add_argument("--n", type=_int_arg, metavar="int")
    p.add_argument("--points", metavar="csv")

    p = sub.add_parser("verify", help="run verification suites", allow_abbrev=False)
    common(p, "json")
    p.add_argument("--n-max", type=_int_arg, metavar="int")
    p.add_argument("--suites", default="all", metavar="csv|all")
    p.add_argument("--tolerance", type=float, metavar="float")
    return parser


COMMANDS = {"list": cmd_list, "table": cmd_table, "eval": cmd_eval, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = COMMANDS[args.command](args)
    except (UsageError, HyperladderError, ValueError) as exc:
        print(f"hyperladder: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
