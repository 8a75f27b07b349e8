from fractions import Fraction

import pytest

from hyperladder.errors import DegreeError
from hyperladder.exact import Poly
from hyperladder.families import FAMILY_NAMES, default_family
from hyperladder.ladder_poly import (
    family_polys,
    lower_poly,
    lower_residual,
    raise_poly,
    raise_residual,
    seed_polynomial,
    verify_ode,
    verify_recurrence,
)

S = Poly.x()


def _top(F, n=10):
    return n if F.max_degree is None else min(n, F.max_degree)


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_ode_and_recurrence_hold_exactly(name):
    F = default_family(name)
    top = _top(F)
    seq = family_polys(F, top)
    for n in range(top + 1):
        assert verify_ode(F, n, seq[n]).is_zero
        assert seq[n].degree == n
    for n in range(min(top, (F.max_degree or top + 1) - 1) + 1):
        if n + 1 <= top:
            assert verify_recurrence(F, n, seq).is_zero


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_raising_and_lowering_are_inverse_steps(name):
    F = default_family(name)
    top = _top(F, 8)
    seq = family_polys(F, top)
    for n in range(1, top + 1):
        assert lower_poly(F, n, seq[n]) == seq[n - 1]
        assert lower_residual(F, n, seq[n], seq[n - 1]).is_zero
    for n in range(top):
        assert raise_residual(F, n, seq[n], seq[n + 1]).is_zero


def test_hermite_rows():
    seq = family_polys(default_family("hermite"), 3)
    assert [list(p.coeffs) for p in seq] == [[1], [0, 2], [-2, 0, 4], [0, -12, 0, 8]]


def test_charlier_first_polynomial():
    F = default_family("charlier", mu=Fraction(1, 2))
    # c_1(x) = 1 - x/mu in the hypergeometric normalization
    assert family_polys(F, 1)[1] == 1 - 2 * S


def test_wrong_candidate_is_detected():
    F = default_family("laguerre")
    seq = family_polys(F, 3)
    assert not raise_residual(F, 2, seq[2], seq[3] + 1).is_zero
    assert not verify_ode(F, 2, seq[2] + S).is_zero


def test_raising_past_the_top_is_refused():
    F = default_family("hahn")
    seq = family_polys(F, F.max_degree)
    with pytest.raises(DegreeError):
        raise_poly(F, F.max_degree, seq[F.max_degree])
    with pytest.raises(DegreeError):
        lower_poly(F, 0, seed_polynomial(F))
