"""Polynomial-layer ladder engine.

y_0 = 1 and every higher member comes from the raising relation

    (lambda_2n/2n) alpha_n y_{n+1} = (lambda_n/n)(tau_n/tau_n') y_n - sigma D y_n

with D = d/ds on the line and D = nabla on a lattice.  Lowering uses

    (lambda_2n/2n) gamma_n y_{n-1} = sigma y_n' - [m_n - (lambda_2n/2n)(s - beta_n)] y_n

on the line and, on a lattice, the relation obtained by eliminating P_{n+1}
between the raising relation and the three-term recurrence:

    (lambda_2n/2n) gamma_n P_{n-1} = (sigma+tau) Delta P_n
        - [m_n - lambda_n - (lambda_2n/2n)(x - beta_n)] P_n,

where m_n = (lambda_n/n) tau_n / tau_n'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeError, InvariantError
from .exact import Poly
from .families import (
    FamilySpec,
    check_degree,
    family_key,
    lambda_n,
    lambda_slope,
    recurrence_coeffs,
    tau_n,
)

__all__ = [
    "PolySeq",
    "raising_multiplier",
    "seed_polynomial",
    "raise_poly",
    "lower_poly",
    "build_family_polys",
    "family_polys",
    "verify_ode",
    "verify_recurrence",
    "raise_residual",
    "lower_residual",
]

_X = Poly.x()


@dataclass(frozen=True)
class PolySeq:
    family: FamilySpec
    polys: tuple

    def __getitem__(self, n):
        return self.polys[n]

    def __len__(self):
        return len(self.polys)

    @property
    def n_max(self) -> int:
        return len(self.polys) - 1


def raising_multiplier(F: FamilySpec, n: int) -> Poly:
    """m_n = (lambda_n/n) * tau_n / tau_n'."""
    tn = tau_n(F, n)
    return lambda_slope(F, n) * tn / tn.leading


def _diff(F: FamilySpec, p: Poly) -> Poly:
    return p.bwd_diff() if F.is_discrete else p.derivative()


def _lowering_bracket(F: FamilySpec, n: int) -> Poly:
    beta = recurrence_coeffs(F, n)[1]
    out = raising_multiplier(F, n) - lambda_slope(F, 2 * n) * (_X - beta)
    if F.is_discrete:
        out = out - lambda_n(F, n)
    return out


def seed_polynomial(F: FamilySpec) -> Poly:
    """The constant 1, after checking the n = 0 lowering relation kills it."""
    y0 = Poly(1)
    if not lower_residual(F, 0, y0, Poly()).is_zero:
        raise InvariantError(f"{F.label()}: the n=0 lowering relation does not annihilate y_0")
    return y0


def raise_poly(F: FamilySpec, n: int, y_n: Poly) -> Poly:
    check_degree(F, n + 1, "raised degree")
    if y_n.degree != n:
        raise DegreeError(f"raise_poly expects a degree-{n} polynomial, got degree {y_n.degree}")
    alpha = recurrence_coeffs(F, n)[0]
    scale = lambda_slope(F, 2 * n) * alpha
    if scale == 0:
        raise InvariantError(f"{F.label()}: zero divisor in the raising relation at n={n}")
    out = (raising_multiplier(F, n) * y_n - F.sigma * _diff(F, y_n)) / scale
    if out.degree != n + 1:
        raise InvariantError(f"{F.label()}: raising produced degree {out.degree}, expected {n + 1}")
    return out


def lower_poly(F: FamilySpec, n: int, y_n: Poly) -> Poly:
    if n < 1:
        raise DegreeError("lower_poly needs n >= 1 (gamma_0 = 0)")
    check_degree(F, n)
    if y_n.degree != n:
        raise DegreeError(f"lower_poly expects a degree-{n} polynomial, got degree {y_n.degree}")
    gamma = recurrence_coeffs(F, n)[2]
    scale = lambda_slope(F, 2 * n) * gamma
    if scale == 0:
        raise InvariantError(f"{F.label()}: zero divisor in the lowering relation at n={n}")
    if F.is_discrete:
        top = (F.sigma + F.tau) * y_n.fwd_diff()
    else:
        top = F.sigma * y_n.derivative()
    return (top - _lowering_bracket(F, n) * y_n) / scale


def raise_residual(F: FamilySpec, n: int, y_n: Poly, y_next: Poly) -> Poly:
    """Residual of the raising relation for a candidate pair (y_n, y_{n+1})."""
    alpha = recurrence_coeffs(F, n)[0]
    return (
        raising_multiplier(F, n) * y_n
        - F.sigma * _diff(F, y_n)
        - lambda_slope(F, 2 * n) * alpha * y_next
    )


def lower_residual(F: FamilySpec, n: int, y_n: Poly, y_prev: Poly) -> Poly:
    """Residual of the lowering relation for a pair (y_n, y_{n-1})."""
    gamma = recurrence_coeffs(F, n)[2]
    if F.is_discrete:
        top = (F.sigma + F.tau) * y_n.fwd_diff()
    else:
        top = F.sigma * y_n.derivative()
    return top - _lowering_bracket(F, n) * y_n - lambda_slope(F, 2 * n) * gamma * y_prev


def build_family_polys(F: FamilySpec, n_max: int) -> PolySeq:
    check_degree(F, n_max, "n_max")
    polys = [seed_polynomial(F)]
    for n in range(n_max):
        polys.append(raise_poly(F, n, polys[-1]))
    return PolySeq(F, tuple(polys))


_CACHE: dict = {}


def family_polys(F: FamilySpec, n_max: int) -> PolySeq:
    """Memoized :func:`build_family_polys` (FamilySpec is immutable)."""
    key = family_key(F)
    seq = _CACHE.get(key)
    if seq is None or seq.n_max < n_max:
        seq = build_family_polys(F, n_max)
        _CACHE[key] = seq
    if seq.n_max == n_max:
        return seq
    return PolySeq(F, seq.polys[: n_max + 1])


def verify_ode(F: FamilySpec, n: int, y_n: Poly) -> Poly:
    """Residual of sigma y'' + tau y' + lambda_n y (or its lattice analogue)."""
    lam = lambda_n(F, n)
    if F.is_discrete:
        return F.sigma * y_n.bwd_diff().fwd_diff() + F.tau * y_n.fwd_diff() + lam * y_n
    d1 = y_n.derivative()
    return F.sigma * d1.derivative() + F.tau * d1 + lam * y_n


def verify_recurrence(F: FamilySpec, n: int, seq) -> Poly:
    """Residual of x y_n - alpha_n y_{n+1} - beta_n y_n - gamma_n y_{n-1}."""
    polys = seq.polys if isinstance(seq, PolySeq) else tuple(seq)
    if n + 1 >= len(polys):
        raise DegreeError(f"recurrence at n={n} needs y_{n + 1}")
    alpha, beta, gamma = recurrence_coeffs(F, n)
    prev = polys[n - 1] if n >= 1 else Poly()
    return _X * polys[n] - alpha * polys[n + 1] - beta * polys[n] - gamma * prev


def leading_ratio(F: FamilySpec, seq: PolySeq, n: int) -> Fraction:
    return seq[n + 1].leading / seq[n].leading
