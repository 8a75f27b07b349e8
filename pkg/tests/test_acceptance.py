"""Acceptance criteria, one test each, at the stated tolerances.

Each test prints a single "criterion k: PASS/FAIL" line to the terminal.
Desk parameters are the package defaults.
"""

import math
import subprocess
import sys

import pytest

from hyperladder.exact import SignedRoot
from hyperladder.factorization import eigen_residual, mu_bracket
from hyperladder.families import FAMILY_NAMES, default_family
from hyperladder.orthonormal import (
    adjointness_check,
    h_symmetry,
    inner_product,
    ladder_constant,
    ortho_eval,
)
from hyperladder.tables import DOCUMENTED, run_fixtures
from hyperladder.verify import verify_family, verify_generic_fixtures
from table_values import lmlp, lplm

FAMILIES = [default_family(name) for name in FAMILY_NAMES]


def _top(F, n):
    return n if F.max_degree is None else min(n, F.max_degree)


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'}{' - ' + detail if detail else ''}")
        return ok
    return emit


def test_criterion_1_exact_zero_residuals(report):
    failures = []
    count = 0
    for F in FAMILIES:
        rep = verify_family(F, _top(F, 12), ("ode", "recurrence", "ladder", "factorization"))
        for suite in rep["suites"]:
            for c in suite["checks"]:
                if c["mode"] != "exact":
                    continue
                count += 1
                if c["residual"] != "exact-zero":
                    failures.append(f"{F.name} {c['identity']} n={c['n']}: {c['residual']}")
    ok = report(1, not failures, f"{count} exact checks, {len(failures)} nonzero")
    assert ok, failures[:10]


def test_criterion_2_table_constants(report):
    failures = []
    for F in FAMILIES:
        p = dict(F.params)
        for n in range(_top(F, 10) + 1):
            mu = mu_bracket(F, n).mu
            if mu != lmlp(F.name, p, n):
                failures.append(f"{F.name} L-L+ n={n}: {mu} != {lmlp(F.name, p, n)}")
            if F.max_degree is None or n < F.max_degree:
                if not eigen_residual(F, "LmLp", n, lmlp(F.name, p, n)).is_zero:
                    failures.append(f"{F.name} L-L+ psi_{n}")
            if n >= 1 and not eigen_residual(F, "LpLm", n, lplm(F.name, p, n)).is_zero:
                failures.append(f"{F.name} L+L- psi_{n}")
    ok = report(2, not failures, f"{len(failures)} mismatches")
    assert ok, failures


def test_criterion_3_orthonormality(report):
    failures = []
    worst = 0.0
    for F in FAMILIES:
        top = _top(F, 10)
        for n in range(top + 1):
            for m in range(n + 1):
                r = inner_product(F, m, n)
                want = 1 if m == n else 0
                if F.name in ("meixner", "charlier"):
                    err = abs(float(r.value) - want)
                    worst = max(worst, err)
                    if not (err < 1e-12 and r.tail_bound < 1e-12):
                        failures.append(f"{F.name} <{m},{n}> err={err}")
                elif not (r.mode == "exact" and r.value == want):
                    failures.append(f"{F.name} <{m},{n}> = {r.value}")
    ok = report(3, not failures, f"worst infinite-lattice error {worst:.1e}")
    assert ok, failures


def test_criterion_4_adjointness(report):
    failures = []
    worst = 0.0
    for F in FAMILIES:
        top = _top(F, 8)
        if F.max_degree is not None:
            top = min(top, F.max_degree - 1)
        for n in range(top + 1):
            lhs, rhs, expected = adjointness_check(F, n)
            worst = max(worst, abs(lhs - rhs), abs(lhs - expected))
            if not (abs(lhs - rhs) < 1e-10 and abs(lhs - expected) < 1e-10 and abs(rhs - expected) < 1e-10):
                failures.append(f"{F.name} n={n}: {lhs} {rhs} {expected}")
        if F.is_discrete and F.is_finite:
            for n in range(_top(F, 8) + 1):
                for m in range(_top(F, 8) + 1):
                    left, right = h_symmetry(F, m, n)
                    worst_h = abs(left - right)
                    if not worst_h < 1e-12:
                        failures.append(f"{F.name} H symmetry l={m} n={n}: {worst_h}")
    ok = report(4, not failures, f"worst adjointness error {worst:.1e}")
    assert ok, failures


def test_criterion_5_spot_checks(report):
    H = default_family("hermite")
    L = default_family("legendre")
    checks = [
        abs(ortho_eval(H, 0, 0) - math.pi ** -0.25) < 1e-14,
        all(abs(ortho_eval(L, 0, s) - 1 / math.sqrt(2)) < 1e-14 for s in (-0.9, -0.3, 0.0, 0.5, 0.99)),
        ladder_constant(H, "raise", 3) == SignedRoot(1, 8),
        abs(float(ladder_constant(H, "raise", 3)) - math.sqrt(8)) < 1e-14,
    ]
    ok = report(5, all(checks), f"{sum(checks)}/{len(checks)} spot checks")
    assert ok


def test_criterion_6_fixture_suite(report):
    problems = []
    corrected = set()
    for F in FAMILIES:
        for o in run_fixtures(F):
            if not o.passed:
                problems.append(f"{F.name} {o.fixture.tag}: fails printed and corrected")
            elif o.corrected:
                corrected.add(o.fixture.tag)
                if not o.fixture.documented:
                    problems.append(f"{o.fixture.tag}: undocumented correction ({o.fixture.note})")
    generic = verify_generic_fixtures(FAMILIES)
    for c in generic["checks"]:
        if c["status"] == "fail":
            problems.append(f"{c['identity']}: fails printed and corrected")
        elif c["corrected"]:
            corrected.add(c["identity"])
            if not c["documented"]:
                problems.append(f"{c['identity']}: undocumented correction ({c['note']})")
    unexpected = sorted(corrected - DOCUMENTED)
    ok = report(6, not problems,
                f"{len(corrected)} corrected, undocumented: {', '.join(unexpected) if unexpected else 'none'}")
    assert ok, problems


def test_criterion_7_determinism(report):
    cmd = [sys.executable, "-m", "hyperladder", "verify", "--family", "all"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    same = first.stdout == second.stdout and first.returncode == second.returncode
    ok = report(7, same and len(first.stdout) > 0, f"{len(first.stdout)} bytes, exit {first.returncode}")
    assert ok
