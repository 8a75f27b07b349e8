from fractions import Fraction

import pytest

from hyperladder.errors import DegreeError, KindError
from hyperladder.families import FAMILY_NAMES, default_family, recurrence_coeffs
from hyperladder.factorization import (
    adjoint_scaled_factorization,
    bracket_operator,
    cross_layer_check,
    eigen_residual,
    factorization_residual,
    ladder_coeffs,
    mu_bracket,
    mu_closed_form,
    printed_continuous_bracket,
    shift_identity_residual,
)
from hyperladder.operators import DiffOp
from table_values import lmlp, lplm


def _top(F, n):
    return n if F.max_degree is None else min(n, F.max_degree)


def _params(F):
    return dict(F.params)


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_mu_matches_displayed_eigenvalues(name):
    F = default_family(name)
    for n in range(_top(F, 8)):
        c = mu_bracket(F, n)
        assert c.mu == lmlp(name, _params(F), n)
        assert c.nu == c.mu
        assert lplm(name, _params(F), n + 1) == c.mu


def test_chebyshev_mu_row():
    F = default_family("chebyshev", N=8)
    assert mu_bracket(F, 2).mu == Fraction(495, 4)


@pytest.mark.parametrize("name", ("kravchuk", "chebyshev", "hahn"))
def test_mu_vanishes_at_the_top_degree(name):
    F = default_family(name)
    assert mu_bracket(F, F.max_degree).mu == 0
    assert mu_closed_form(F, F.max_degree) == 0


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_factorization_certificates(name):
    F = default_family(name)
    first, second = ("ND5", "ND6") if F.is_discrete else ("NC5", "NC6")
    for n in range(_top(F, 6) + 1):
        assert factorization_residual(F, first, n).is_zero
        if F.max_degree is None or n < F.max_degree:
            assert factorization_residual(F, second, n).is_zero
            assert shift_identity_residual(F, n).is_zero
        assert cross_layer_check(F, n)


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_wrong_eigenvalue_is_detected(name):
    F = default_family(name)
    mu = mu_bracket(F, 2).mu
    assert eigen_residual(F, "LmLp", 2, mu).is_zero
    assert not eigen_residual(F, "LmLp", 2, mu + 1).is_zero
    assert eigen_residual(F, "LpLm", 3, mu).is_zero


@pytest.mark.parametrize("name", ("hermite", "laguerre", "legendre", "jacobi"))
def test_displayed_continuous_bracket_is_mu(name):
    F = default_family(name)
    for n in range(6):
        assert printed_continuous_bracket(F, n) == mu_bracket(F, n).mu


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_adjoint_scaled_constant(name):
    F = default_family(name)
    for n in range(_top(F, 5)):
        alpha, _, _ = recurrence_coeffs(F, n)
        gamma = recurrence_coeffs(F, n + 1)[2]
        assert adjoint_scaled_factorization(F, n).mu == alpha * gamma


def test_brackets_are_constant_operators():
    F = default_family("laguerre")
    op = bracket_operator(F, 3)
    assert isinstance(op, DiffOp)
    assert op.order == 0


def test_ladder_coefficients_have_low_degree():
    for name in FAMILY_NAMES:
        c = ladder_coeffs(default_family(name), 2)
        assert c.first.degree <= 2 and c.second.degree <= 2


def test_kind_and_degree_errors():
    with pytest.raises(KindError):
        factorization_residual(default_family("hermite"), "ND5", 1)
    with pytest.raises(KindError):
        printed_continuous_bracket(default_family("charlier"), 1)
    F = default_family("hahn")
    with pytest.raises(DegreeError):
        factorization_residual(F, "ND6", F.max_degree)
    with pytest.raises(ValueError):
        factorization_residual(F, "ND7", 1)
