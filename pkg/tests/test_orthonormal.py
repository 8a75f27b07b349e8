import math
from fractions import Fraction

import pytest

from hyperladder.exact import SignedRoot
from hyperladder.families import FAMILY_NAMES, default_family
from hyperladder.orthonormal import (
    H_residual,
    adjointness_check,
    h_symmetry,
    inner_product,
    ladder_constant,
    ladder_pointwise_error,
    ortho_eval,
    ortho_eval_direct,
    quad_inner_product,
    reduce_to_poly_layer,
)

CONTINUOUS = ("hermite", "laguerre", "legendre", "jacobi")
DISCRETE = ("kravchuk", "meixner", "charlier", "chebyshev", "hahn")


def _top(F, n):
    return n if F.max_degree is None else min(n, F.max_degree)


def test_closed_form_values():
    H = default_family("hermite")
    assert ortho_eval(H, 0, 0) == pytest.approx(math.pi ** -0.25, abs=1e-15)
    assert ortho_eval(default_family("legendre"), 0, 0.5) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    C = default_family("charlier")
    # phi_0 = sqrt(e^-mu mu^x / x!)
    assert ortho_eval(C, 0, 2) == pytest.approx(math.sqrt(math.exp(-0.5) * 0.25 / 2), rel=1e-14)


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_two_evaluation_paths_agree(name):
    F = default_family(name)
    pts = range(0, 6) if F.is_discrete else [float(Fraction(p)) for p in F.probes]
    for n in range(_top(F, 6) + 1):
        for x in pts:
            assert ortho_eval(F, n, x) == pytest.approx(ortho_eval_direct(F, n, x), rel=1e-11, abs=1e-13)


@pytest.mark.parametrize("name", ("hermite", "legendre", "jacobi", "kravchuk", "chebyshev", "hahn"))
def test_exact_orthonormality(name):
    F = default_family(name)
    top = _top(F, 6)
    for n in range(top + 1):
        for m in range(n + 1):
            r = inner_product(F, m, n)
            assert r.mode == "exact"
            assert r.value == (1 if m == n else 0)


@pytest.mark.parametrize("name", ("meixner", "charlier"))
def test_infinite_lattice_orthonormality_with_tail_bound(name):
    F = default_family(name)
    for n in range(5):
        for m in range(n + 1):
            r = inner_product(F, m, n)
            assert r.mode == "numeric"
            assert r.tail_bound < 1e-14
            assert abs(float(r.value) - (m == n)) < 1e-12


@pytest.mark.parametrize("name", CONTINUOUS)
def test_quadrature_cross_check(name):
    F = default_family(name)
    for m, n in ((0, 0), (1, 2), (3, 3)):
        assert quad_inner_product(F, m, n) == pytest.approx(float(m == n), abs=1e-9)


def test_hermite_ladder_constant_at_three():
    c = ladder_constant(default_family("hermite"), "raise", 3)
    assert c == SignedRoot(1, 8)
    assert float(c) == pytest.approx(math.sqrt(8), abs=1e-14)


def test_ladder_constants_vanish_at_the_ends():
    F = default_family("kravchuk")
    assert ladder_constant(F, "raise", F.max_degree).is_zero
    assert ladder_constant(F, "lower", 0).is_zero


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_poly_layer_reductions_are_exact(name):
    F = default_family(name)
    pre = "ND" if F.is_discrete else "NC"
    for n in range(_top(F, 6) + 1):
        for k in (1, 2, 3, 4):
            assert reduce_to_poly_layer(F, f"{pre}{k}", n).is_zero
        assert H_residual(F, n).is_zero


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_perturbed_constant_is_detected(name):
    F = default_family(name)
    pre = "ND" if F.is_discrete else "NC"
    assert not reduce_to_poly_layer(F, f"{pre}3", 2, perturb=Fraction(101, 100)).is_zero
    assert not reduce_to_poly_layer(F, f"{pre}2", 2, perturb=-1).is_zero


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_pointwise_ladder_action(name):
    F = default_family(name)
    for n in range(_top(F, 5) + 1):
        for direction in ("raise", "lower"):
            assert ladder_pointwise_error(F, direction, n) < 1e-10
            assert ladder_pointwise_error(F, direction, n, adjoint_normalized=True) < 1e-10


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_mutual_adjointness(name):
    F = default_family(name)
    for n in range(_top(F, 5)):
        lhs, rhs, expected = adjointness_check(F, n)
        assert abs(lhs - rhs) < 1e-10
        assert abs(lhs - expected) < 1e-10


@pytest.mark.parametrize("name", ("kravchuk", "chebyshev", "hahn"))
def test_lattice_h_symmetry(name):
    F = default_family(name)
    for n in range(5):
        for m in range(n + 1):
            left, right = h_symmetry(F, m, n)
            assert abs(left - right) < 1e-12
