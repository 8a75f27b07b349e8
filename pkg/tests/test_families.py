import math
from fractions import Fraction

import pytest

from hyperladder.errors import DegreeError, DomainError, ParameterError
from hyperladder.families import (
    FAMILY_NAMES,
    check_degree,
    default_family,
    lambda_n,
    log_norm_sq,
    make_family,
    norm_product,
    pearson_ratio,
    weight_eval,
)
from hyperladder.ladder_poly import family_polys
from conftest import family_of


def test_nine_families_with_desk_defaults():
    assert len(FAMILY_NAMES) == 9
    F = default_family("hahn")
    assert dict(F.params) == {"alpha": 1, "beta": 2, "N": 8}
    assert default_family("krawtchouk").name == "kravchuk"
    assert default_family("chebyshev_discrete").name == "chebyshev"


def test_polynomials_match_frozen_oracle(poly_case):
    F = family_of(poly_case)
    want = [[Fraction(c) for c in row] for row in poly_case["polys"]]
    seq = family_polys(F, len(want) - 1)
    for n, row in enumerate(want):
        assert list(seq[n].coeffs) == row, f"n={n}"


def test_norms_match_frozen_oracle(norm_case):
    F = family_of(norm_case)
    for n, text in enumerate(norm_case["norm_sq"]):
        assert math.exp(log_norm_sq(F, n)) == pytest.approx(float(text), rel=1e-12)


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_eigenvalue_closed_form(name):
    F = default_family(name)
    for n in range(5):
        expected = -n * F.tau.leading - Fraction(n * (n - 1), 2) * 2 * F.sigma.coeff(2)
        assert lambda_n(F, n) == expected


@pytest.mark.parametrize("name", ["kravchuk", "meixner", "charlier", "chebyshev", "hahn"])
def test_pearson_ratio_matches_weight(name):
    F = default_family(name)
    ratio = pearson_ratio(F)
    for x in range(0, 6):
        assert float(ratio(Fraction(x))) == pytest.approx(weight_eval(F, x + 1) / weight_eval(F, x), rel=1e-13)


@pytest.mark.parametrize(
    "name, params",
    [
        ("laguerre", {"alpha": -1}),
        ("jacobi", {"alpha": -1, "beta": 0}),
        ("jacobi", {"alpha": Fraction(-1, 2), "beta": Fraction(-1, 2)}),
        ("kravchuk", {"p": 1, "N": 4}),
        ("kravchuk", {"p": Fraction(1, 2), "N": 0}),
        ("meixner", {"gamma": 2, "mu": 2}),
        ("meixner", {"gamma": 0, "mu": Fraction(1, 2)}),
        ("charlier", {"mu": 0}),
        ("chebyshev", {"N": 0}),
        ("hahn", {"alpha": -1, "beta": 0, "N": 5}),
        ("hermite", {"alpha": 1}),
        ("legendre", {"N": 3}),
    ],
)
def test_parameter_domain_is_enforced(name, params):
    with pytest.raises(ParameterError):
        make_family(name, params)


def test_unknown_family():
    with pytest.raises(ParameterError):
        make_family("gegenbauer", {})


def test_degree_limits():
    assert default_family("kravchuk").max_degree == 8
    assert default_family("chebyshev").max_degree == 7
    assert default_family("hahn").max_degree == 7
    assert default_family("hermite").max_degree is None
    with pytest.raises(DegreeError):
        check_degree(default_family("hahn"), 8)
    with pytest.raises(DegreeError):
        check_degree(default_family("hermite"), -1)


def test_top_norm_ratio_vanishes_on_finite_lattices():
    for name in ("kravchuk", "chebyshev", "hahn"):
        F = default_family(name)
        assert norm_product(F, F.max_degree) > 0


def test_off_support_points_are_rejected():
    with pytest.raises(DomainError):
        weight_eval(default_family("legendre"), 1)
    with pytest.raises(DomainError):
        weight_eval(default_family("laguerre"), -Fraction(1, 2))
    with pytest.raises(DomainError):
        weight_eval(default_family("hahn"), 8)
    with pytest.raises(DomainError):
        weight_eval(default_family("charlier"), Fraction(1, 2))
