"""Verification suites and the JSON report they produce.

A report is a plain dict so that it serializes deterministically:

    {engine_version, family, params,
     suites: [{name, checks: [{identity, n, mode, residual, tolerance, pass, ...}], pass}],
     pass}

Exact checks report ``"exact-zero"`` or the offending residual polynomial;
numeric checks report the float residual against the tolerance.
"""

from __future__ import annotations

from fractions import Fraction

from . import __version__
from .errors import HyperladderError
from .exact import Poly
from .factorization import (
    adjoint_scaled_factorization,
    cross_layer_check,
    eigen_residual,
    factorization_residual,
    mu_bracket,
    shift_identity_residual,
)
from .families import FAMILY_NAMES, FamilySpec, check_degree, default_family
from .ladder_poly import family_polys, lower_residual, raise_residual, verify_ode, verify_recurrence
from .orthonormal import (
    adjointness_check,
    h_symmetry,
    inner_product,
    ladder_pointwise_error,
    reduce_to_poly_layer,
)
from .tables import FIXTURE_N_MAX, NUMERIC_TOL, generic_fixtures, run_fixture, run_fixtures

__all__ = [
    "SUITES",
    "DEFAULT_TOLERANCE",
    "DEFAULT_N_MAX",
    "verify_family",
    "verify_all",
    "format_rational",
]

SUITES = ("ode", "recurrence", "ladder", "orthonormality", "adjoint", "factorization", "fixtures")
DEFAULT_TOLERANCE = 1e-10
DEFAULT_N_MAX = 12
ORTHO_N_MAX = 10
ADJOINT_N_MAX = 8


def format_rational(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def params_json(F: FamilySpec) -> dict:
    return {k: format_rational(v) for k, v in F.params}


def _exact(identity: str, n: int, residual, **extra) -> dict:
    if isinstance(residual, Poly):
        ok = residual.is_zero
        shown = "exact-zero" if ok else residual.to_string()
    else:
        ok = residual is None
        shown = "exact-zero" if ok else str(residual)
    out = {"identity": identity, "n": n, "mode": "exact", "residual": shown, "tolerance": None, "pass": ok}
    out.update(extra)
    return out


def _numeric(identity: str, n: int, residual: float, tol: float, **extra) -> dict:
    residual = float(residual)
    ok = bool(residual < tol)
    out = {"identity": identity, "n": n, "mode": "numeric", "residual": residual, "tolerance": tol, "pass": ok}
    out.update(extra)
    return out


def _guard(identity: str, n: int, fn) -> dict:
    """Run one check; engine errors become a failed exact check."""
    try:
        return fn()
    except HyperladderError as exc:
        return _exact(identity, n, f"error: {exc}")


def _top(F: FamilySpec, n_max: int) -> int:
    return n_max if F.max_degree is None else min(n_max, F.max_degree)


def _tag(F: FamilySpec, k: int) -> str:
    if F.is_discrete:
        return {1: "D1", 2: "D2", 3: "D3", 4: "D4"}[k]
    return {1: "C1", 2: "C2", 3: "C3", 4: "C4"}[k]


# Suites ------------------------------------------------------------------

def suite_ode(F, n_max, tol, adjoint_normalized):
    top = _top(F, n_max)
    seq = family_polys(F, top)
    return [_exact(_tag(F, 1), n, verify_ode(F, n, seq[n])) for n in range(top + 1)]


def suite_recurrence(F, n_max, tol, adjoint_normalized):
    top = _top(F, n_max)
    last = top if F.max_degree is None else min(top, F.max_degree - 1)
    seq = family_polys(F, last + 1)
    return [_exact(_tag(F, 2), n, verify_recurrence(F, n, seq)) for n in range(last + 1)]


def suite_ladder(F, n_max, tol, adjoint_normalized):
    top = _top(F, n_max)
    seq = family_polys(F, top)
    prefix = "ND" if F.is_discrete else "NC"
    checks = []
    for n in range(top + 1):
        if n < top:
            checks.append(_exact(_tag(F, 3), n, raise_residual(F, n, seq[n], seq[n + 1])))
        if n >= 1:
            checks.append(_exact(_tag(F, 4), n, lower_residual(F, n, seq[n], seq[n - 1])))
        for k in (1, 2, 3, 4):
            ident = f"{prefix}{k}"
            checks.append(_guard(ident, n, lambda ident=ident: _exact(ident, n, reduce_to_poly_layer(F, ident, n))))
        if _below_top(F, n):
            ident = "u(x+1,n)=v(x,n+1)" if F.is_discrete else "f(s,n)=g(s,n+1)"
            checks.append(_exact(ident, n, shift_identity_residual(F, n)))
        for direction in ("raise", "lower"):
            err = ladder_pointwise_error(F, direction, n, adjoint_normalized)
            checks.append(_numeric(f"L{'+' if direction == 'raise' else '-'} pointwise", n, err, tol))
    return checks


def suite_orthonormality(F, n_max, tol, adjoint_normalized):
    top = min(_top(F, n_max), ORTHO_N_MAX)
    checks = []
    for n in range(top + 1):
        for m in range(n + 1):
            r = inner_product(F, m, n)
            want = 1 if m == n else 0
            ident = f"<psi_{m},psi_{n}>"
            if r.mode == "exact" and isinstance(r.value, Fraction):
                res = None if r.value == want else f"value {format_rational(r.value)}"
                checks.append(_exact(ident, n, res, m=m))
            else:
                checks.append(_numeric(ident, n, abs(float(r.value) - want), tol, m=m, tail_bound=r.tail_bound))
    return checks


def suite_adjoint(F, n_max, tol, adjoint_normalized):
    top = min(_top(F, n_max), ADJOINT_N_MAX)
    if F.max_degree is not None:
        top = min(top, F.max_degree - 1)
    checks = []
    for n in range(top + 1):
        lhs, rhs, expected = adjointness_check(F, n, True)
        checks.append(_numeric("<psi_n+1,L+ psi_n>=<L- psi_n+1,psi_n>", n, abs(lhs - rhs), tol))
        checks.append(_numeric("<psi_n+1,L+ psi_n>=alpha_n d_n+1/d_n", n, abs(lhs - expected), tol))
    if F.is_discrete and F.is_finite:
        hi = min(_top(F, n_max), ADJOINT_N_MAX)
        for n in range(hi + 1):
            for m in range(n + 1):
                left, right = h_symmetry(F, m, n)
                checks.append(_numeric("H symmetry", n, abs(left - right), tol, m=m))
    return checks


def _below_top(F: FamilySpec, n: int) -> bool:
    return F.max_degree is None or n < F.max_degree


def suite_factorization(F, n_max, tol, adjoint_normalized):
    top = _top(F, n_max)
    first, second = ("ND5", "ND6") if F.is_discrete else ("NC5", "NC6")
    checks = []
    mus = {}
    for n in range(top + 1):
        try:
            c = adjoint_scaled_factorization(F, n) if adjoint_normalized else mu_bracket(F, n)
            extra = {"value": format_rational(c.mu), "nu": format_rational(c.nu)}
            if adjoint_normalized:
                extra["convention"] = "adjoint-normalized"
            checks.append(_exact("mu(n)", n, None, **extra))
            mus[n] = mu_bracket(F, n).mu if adjoint_normalized else c.mu
        except HyperladderError as exc:
            checks.append(_exact("mu(n)", n, f"error: {exc}"))
        checks.append(_guard(first, n, lambda n=n: _exact(first, n, factorization_residual(F, first, n))))
        if _below_top(F, n):
            checks.append(_guard(second, n, lambda n=n: _exact(second, n, factorization_residual(F, second, n))))
        checks.append(_guard("c+_n c-_n+1 = mu(n)", n, lambda n=n: _exact(
            "c+_n c-_n+1 = mu(n)", n, None if cross_layer_check(F, n) else "mismatch")))
        if _below_top(F, n) and n in mus:
            checks.append(_exact("L-L+ eigenvalue", n, eigen_residual(F, "LmLp", n, mus[n])))
        if n >= 1 and n - 1 in mus:
            checks.append(_exact("L+L- eigenvalue", n, eigen_residual(F, "LpLm", n, mus[n - 1])))
    return checks


def _fixture_check(outcome) -> dict:
    fx = outcome.fixture
    degrees = outcome.degrees
    ok = outcome.acceptable
    residual = "exact-zero" if outcome.passed else f"nonzero at n={list(outcome.failed_at)}"
    if fx.layer == "numeric" and outcome.passed:
        residual = 0.0
    out = {
        "identity": fx.tag,
        "n": degrees[-1] if degrees else None,
        "n_min": degrees[0] if degrees else None,
        "mode": "numeric" if fx.layer == "numeric" else "exact",
        "residual": residual,
        "tolerance": None,
        "pass": ok,
        "corrected": outcome.corrected,
        "documented": fx.documented,
        "status": outcome.status,
    }
    if fx.layer == "numeric":
        out["tolerance"] = NUMERIC_TOL
    if outcome.corrected:
        out["note"] = fx.note
        out["printed_failed_at"] = list(outcome.failed_at)
    return out


def suite_fixtures(F, n_max, tol, adjoint_normalized):
    return [_fixture_check(o) for o in run_fixtures(F, False, min(n_max, FIXTURE_N_MAX))]


_RUNNERS = {
    "ode": suite_ode,
    "recurrence": suite_recurrence,
    "ladder": suite_ladder,
    "orthonormality": suite_orthonormality,
    "adjoint": suite_adjoint,
    "factorization": suite_factorization,
    "fixtures": suite_fixtures,
}


def parse_suites(spec) -> tuple:
    if spec is None or spec == "all" or spec == ["all"]:
        return SUITES
    names = spec.split(",") if isinstance(spec, str) else list(spec)
    names = [s.strip() for s in names if s.strip()]
    bad = [s for s in names if s not in SUITES]
    if bad:
        raise ValueError(f"unknown suite(s) {', '.join(bad)}; choose from {', '.join(SUITES)} or all")
    # keep the canonical order so reports do not depend on argument order
    return tuple(s for s in SUITES if s in names)


def _summary(suites: list) -> dict:
    checks = [c for s in suites for c in s["checks"]]
    return {
        "checks": len(checks),
        "passed": sum(1 for c in checks if c["pass"]),
        "failed": sum(1 for c in checks if not c["pass"]),
        "corrected": sum(1 for c in checks if c.get("corrected")),
    }


def verify_family(F: FamilySpec, n_max: int = DEFAULT_N_MAX, suites=SUITES,
                  tolerance: float = DEFAULT_TOLERANCE, adjoint_normalized: bool = False) -> dict:
    if n_max < 0:
        raise ValueError("n-max must be non-negative")
    if F.max_degree is not None:
        check_degree(F, n_max, "n-max")
    out = []
    for name in suites:
        checks = _RUNNERS[name](F, n_max, tolerance, adjoint_normalized)
        out.append({"name": name, "checks": checks, "pass": all(c["pass"] for c in checks)})
    return {
        "engine_version": __version__,
        "family": F.name,
        "params": params_json(F),
        "n_max": n_max,
        "adjoint_normalized": adjoint_normalized,
        "suites": out,
        "summary": _summary(out),
        "pass": all(s["pass"] for s in out),
    }


def verify_generic_fixtures(families: list) -> dict:
    """Generic relations, aggregated over every family they apply to.

    A generic relation counts as corrected when its printed form fails for
    at least one family and the correction holds for all of them.
    """
    checks = []
    for fx in generic_fixtures():
        outcomes = [run_fixture(F, fx) for F in families if F.kind == fx.kind]
        statuses = {o.status for o in outcomes}
        if "fail" in statuses:
            status = "fail"
        elif "corrected" in statuses:
            status = "corrected"
        else:
            status = "as-printed"
        corrected = status == "corrected"
        ok = status == "as-printed" or (corrected and fx.documented)
        check = {
            "identity": fx.tag,
            "n": max(max(o.degrees) for o in outcomes),
            "mode": "exact",
            "residual": "exact-zero" if status != "fail" else "nonzero",
            "tolerance": None,
            "pass": ok,
            "corrected": corrected,
            "documented": fx.documented,
            "status": status,
            "families": [o.family for o in outcomes],
        }
        if corrected:
            check["note"] = fx.note
            check["printed_fails_for"] = [o.family for o in outcomes if o.status == "corrected"]
        checks.append(check)
    return {"name": "fixtures-generic", "checks": checks, "pass": all(c["pass"] for c in checks)}


def verify_all(params_by_family: dict | None = None, n_max: int = DEFAULT_N_MAX, suites=SUITES,
               tolerance: float = DEFAULT_TOLERANCE, adjoint_normalized: bool = False) -> dict:
    """Every family at its given (or default) parameters, in a fixed order."""
    params_by_family = params_by_family or {}
    families = [default_family(name, **params_by_family.get(name, {})) for name in FAMILY_NAMES]
    reports = []
    for F in families:
        top = n_max if F.max_degree is None else min(n_max, F.max_degree)
        reports.append(verify_family(F, top, suites, tolerance, adjoint_normalized))
    extra = []
    if "fixtures" in suites:
        extra.append(verify_generic_fixtures(families))
    return {
        "engine_version": __version__,
        "family": "all",
        "params": {},
        "n_max": n_max,
        "adjoint_normalized": adjoint_normalized,
        "families": reports,
        "suites": extra,
        "summary": _summary(extra + [s for r in reports for s in r["suites"]]),
        "pass": all(r["pass"] for r in reports) and all(s["pass"] for s in extra),
    }
