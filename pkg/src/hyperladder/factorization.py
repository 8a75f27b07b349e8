"""Factorization of the hypergeometric operator into ladder operators.

With L+(n) = f - sigma D, L-(n) = g + sigma D on the line and
L+(n) = u + sqrt(..)E^-1, L-(n) = v + sqrt(..)E on a lattice,

    L-(n+1) L+(n) = mu(n) - sigma H(n)          (line)
    L-(n+1) L+(n) = mu(n) + u(x+1,n) H(n)       (lattice)

and the partner products L+(n) L-(n+1) differ only in the H term.  The
brackets are computed by composing the operators conjugated by sqrt(rho),
which keeps everything rational; the result must be a constant operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .errors import DegreeError, InvariantError, KindError
from .exact import Poly, SignedRoot
from .families import FamilySpec, check_degree, lambda_slope
from .ladder_poly import raising_multiplier
from .operators import DiffOp, ShiftOp
from .orthonormal import (
    Term,
    hamiltonian,
    ladder_constant,
    ladder_first,
    ladder_second,
    lowering_operator,
    raising_operator,
    reduce_operator,
    relation_residual,
)

__all__ = [
    "LadderCoeffs",
    "FactorizationConstants",
    "ladder_coeffs",
    "shift_identity_residual",
    "mu_closed_form",
    "mu_bracket",
    "bracket_operator",
    "factorization_residual",
    "eigen_residual",
    "adjoint_scaled_factorization",
    "cross_layer_check",
    "printed_continuous_bracket",
]

IDENTITIES = ("NC5", "NC6", "ND5", "ND6")


@dataclass(frozen=True)
class LadderCoeffs:
    family: FamilySpec
    n: int
    first: Poly
    second: Poly


@dataclass(frozen=True)
class FactorizationConstants:
    family: FamilySpec
    n: int
    mu: Fraction
    nu: Fraction
    bracket_poly_degree_checked: bool


def ladder_coeffs(F: FamilySpec, n: int) -> LadderCoeffs:
    """f, g on the line or u, v on a lattice at degree n."""
    if n < 0:
        raise DegreeError(f"negative degree {n}")
    first, second = ladder_first(F, n), ladder_second(F, n)
    if first.degree > 2 or second.degree > 2:
        raise InvariantError(f"{F.label()}: ladder coefficients of degree > 2 at n={n}")
    return LadderCoeffs(F, n, first, second)


def shift_identity_residual(F: FamilySpec, n: int) -> Poly:
    """f(s,n) - g(s,n+1), or u(x+1,n) - v(x,n+1)."""
    first = ladder_first(F, n)
    if F.is_discrete:
        first = first.shift(1)
    return first - ladder_second(F, n + 1)


def _gamma_next(F: FamilySpec, n: int) -> Fraction:
    # gamma_{n+1} past the top of a finite family is never needed: alpha_n
    # is then zero, but the closed form may still be evaluated safely.
    return Fraction(F.gamma_fn(n + 1))


def mu_closed_form(F: FamilySpec, n: int) -> Fraction:
    """(lambda_2n/2n)(lambda_2n+2/(2n+2)) alpha_n gamma_{n+1}."""
    check_degree(F, n)
    if F.max_degree is not None and n == F.max_degree:
        return Fraction(0)
    alpha = Fraction(F.alpha_fn(n))
    return lambda_slope(F, 2 * n) * lambda_slope(F, 2 * n + 2) * alpha * _gamma_next(F, n)


def _h_multiplier(F: FamilySpec, n: int, partner: bool):
    """The function multiplying H in the two factorizations.

    Line: -sigma for both.  Lattice: u(x+1,n) for L-L+, u(x,n) for L+L-.
    """
    if not F.is_discrete:
        return -F.sigma
    u = ladder_first(F, n)
    return u if partner else u.shift(1)


def bracket_operator(F: FamilySpec, n: int, partner: bool = False):
    """The composed operator minus its H part, conjugated by sqrt(rho).

    ``partner`` False gives L-(n+1)L+(n) - m H(n), True gives
    L+(n)L-(n+1) - m H(n+1).  Either must come out as a constant.
    """
    if partner:
        product = (raising_operator(F, n), lowering_operator(F, n + 1))
        h = hamiltonian(F, n + 1)
    else:
        product = (lowering_operator(F, n + 1), raising_operator(F, n))
        h = hamiltonian(F, n)
    left = reduce_operator(F, product)
    right = reduce_operator(F, (_h_multiplier(F, n, partner), h))
    return left - right


def _constant_of(F: FamilySpec, op, what: str) -> Fraction:
    if isinstance(op, DiffOp):
        extra = [k for k, c in enumerate(op.coeffs) if k and not c.is_zero]
        c0 = op.coeff(0)
    elif isinstance(op, ShiftOp):
        extra = [k for k in op.coeffs if k]
        c0 = op.coeff(0)
    else:
        raise KindError(f"unexpected operator type {type(op).__name__}")
    if extra:
        raise InvariantError(f"{F.label()}: {what} keeps operator terms of order {extra}")
    if not c0.is_polynomial:
        raise InvariantError(f"{F.label()}: {what} is not polynomial: {c0.to_string(F.var)}")
    p = c0.as_poly()
    if p.degree > 0:
        raise InvariantError(f"{F.label()}: {what} depends on {F.var}: {p.to_string(F.var)}")
    return p.coeff(0)


@lru_cache(maxsize=None)
def mu_bracket(F: FamilySpec, n: int) -> FactorizationConstants:
    """Certify both brackets are constant and equal the closed form."""
    check_degree(F, n)
    mu = _constant_of(F, bracket_operator(F, n, False), f"L-L+ bracket at n={n}")
    closed = mu_closed_form(F, n)
    if F.max_degree is not None and n == F.max_degree:
        # L+(top) kills psi_top, so only the operator identity is checked
        closed = mu
    if mu != closed:
        raise InvariantError(f"{F.label()}: mu({n}) = {mu} but the closed form gives {closed}")
    nu = _constant_of(F, bracket_operator(F, n, True), f"L+L- bracket at n={n}")
    if nu != mu:
        raise InvariantError(f"{F.label()}: nu({n + 1}) = {nu} differs from mu({n}) = {mu}")
    return FactorizationConstants(F, n, mu, nu, True)


def printed_continuous_bracket(F: FamilySpec, n: int) -> Poly:
    """(m/tau_n')^2-type bracket exactly as displayed for the line.

    (lambda_n/n)^2 (tau_n/tau_n')^2 + (lambda_n/n)(tau_n/tau_n')(tau - sigma')
    + (n+1)(lambda_n/n) sigma
    """
    if F.is_discrete:
        raise KindError("the displayed bracket is for continuous families")
    m = raising_multiplier(F, n)
    k = lambda_slope(F, n)
    return m * m + m * (F.tau - F.sigma.derivative()) + (n + 1) * k * F.sigma


def _factorization_terms(F: FamilySpec, which: str, n: int):
    mu = mu_closed_form(F, n)
    if which in ("NC5", "ND5"):
        product = (lowering_operator(F, n + 1), raising_operator(F, n))
        return [
            Term(1, product),
            Term(-mu),
            Term(-1, (_h_multiplier(F, n, False), hamiltonian(F, n))),
        ]
    product = (raising_operator(F, n), lowering_operator(F, n + 1))
    return [
        Term(1, product, 1),
        Term(-mu, None, 1),
        Term(-1, (_h_multiplier(F, n, True), hamiltonian(F, n + 1)), 1),
    ]


def factorization_residual(F: FamilySpec, which: str, n: int) -> Poly:
    """Exact residual of NC5/NC6/ND5/ND6 applied to psi_n (resp. psi_{n+1})."""
    if which not in IDENTITIES:
        raise ValueError(f"unknown factorization identity {which!r}")
    want = "ND" if F.is_discrete else "NC"
    if not which.startswith(want):
        raise KindError(f"{which} does not apply to the {F.kind} family {F.label()}")
    check_degree(F, n)
    if which in ("NC6", "ND6"):
        if F.max_degree is not None and n == F.max_degree:
            raise DegreeError(f"{which} needs psi_{n + 1}, beyond the top degree")
    return relation_residual(F, n, _factorization_terms(F, which, n), "ortho")


def eigen_residual(F: FamilySpec, which: str, n: int, value) -> Poly:
    """Residual of L-L+ psi_n = value psi_n ("LmLp") or L+L- psi_n = value psi_n ("LpLm")."""
    check_degree(F, n)
    if which == "LmLp":
        op = (lowering_operator(F, n + 1), raising_operator(F, n))
    elif which == "LpLm":
        if n == 0:
            op = (raising_operator(F, 0), lowering_operator(F, 0))
        else:
            op = (raising_operator(F, n - 1), lowering_operator(F, n))
    else:
        raise ValueError(f"unknown product {which!r}")
    return relation_residual(F, n, [Term(1, op), Term(-Fraction(value))], "ortho")


def adjoint_scaled_factorization(F: FamilySpec, n: int) -> FactorizationConstants:
    """mu(n) divided by the two lambda slopes; must equal alpha_n gamma_{n+1}."""
    consts = mu_bracket(F, n)
    scale = lambda_slope(F, 2 * n) * lambda_slope(F, 2 * n + 2)
    if scale == 0:
        raise InvariantError(f"{F.label()}: zero adjoint scaling at n={n}")
    scaled = consts.mu / scale
    if F.max_degree is not None and n == F.max_degree:
        expected = Fraction(0)
    else:
        expected = Fraction(F.alpha_fn(n)) * _gamma_next(F, n)
    if scaled != expected:
        raise InvariantError(f"{F.label()}: scaled mu({n}) = {scaled}, expected {expected}")
    return FactorizationConstants(F, n, scaled, scaled, True)


def cross_layer_check(F: FamilySpec, n: int) -> bool:
    """mu(n) = c+_n c-_{n+1} with the ladder constants of the orthonormal layer."""
    mu = mu_bracket(F, n).mu
    if F.max_degree is not None and n == F.max_degree:
        return mu == 0 and ladder_constant(F, "raise", n).is_zero
    prod = ladder_constant(F, "raise", n) * ladder_constant(F, "lower", n + 1)
    return prod == SignedRoot.of(mu)
