from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperladder.exact import Poly, RationalFn, SignedRoot, as_fraction, fraction_sqrt
from hyperladder.operators import DiffOp, ShiftOp

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero = fractions.filter(lambda q: q != 0)
polys = st.lists(fractions, max_size=6).map(Poly)
small_polys = st.lists(fractions, max_size=3).map(Poly)
nonzero_polys = st.builds(lambda cs, top: Poly(cs + [top]), st.lists(fractions, max_size=3), nonzero)
shifts = st.integers(-4, 4)

S = Poly.x()


def test_zero_polynomial_has_negative_infinite_degree():
    assert Poly().degree == float("-inf")
    assert Poly([0, 0]).is_zero
    assert Poly([1, 2, 0]).coeffs == (1, 2)


def test_as_fraction_accepts_strings_and_rejects_floats():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(" -2 ") == -2
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_hermite_like_arithmetic():
    p = 4 * S * S - 2
    assert p.coeffs == (-2, 0, 4)
    assert p.derivative() == 8 * S
    assert p(Fraction(1, 2)) == -1
    assert p.shift(1) == 4 * S * S + 8 * S + 2
    assert p.fwd_diff() == 8 * S + 4
    assert p.bwd_diff() == 8 * S - 4


def test_divmod_and_sqrt():
    q, r = (S**3 + 1).divmod(S + 1)
    assert q == S * S - S + 1 and r.is_zero
    assert ((2 * S + 3) ** 2).sqrt() == 2 * S + 3
    assert (S * S + 1).sqrt() is None
    assert fraction_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert fraction_sqrt(Fraction(2)) is None


def test_rational_function_is_reduced():
    r = RationalFn(S * S - 1, 2 * S - 2)
    assert r.is_polynomial
    assert r.as_poly() == (S + 1) / 2
    assert RationalFn(S, S * S).den == S


def test_signed_root():
    a = SignedRoot(1, 8)
    assert a * a == SignedRoot.of(8)
    assert (a / SignedRoot(1, 2)).rational() == 2
    assert -a == SignedRoot(-1, 8)
    assert a.same_class(SignedRoot(-1, 2)) == -2
    assert a.same_class(SignedRoot(1, 3)) is None
    assert float(a) == pytest.approx(8**0.5, rel=1e-15)
    assert SignedRoot(1, 0).is_zero


@given(polys)
def test_forward_and_backward_differences_commute(p):
    assert p.fwd_diff().bwd_diff() == p.bwd_diff().fwd_diff()


@given(polys)
def test_forward_difference_is_shifted_backward_difference(p):
    assert p.fwd_diff() == p.bwd_diff().shift(1)


@given(polys, polys)
def test_product_rule(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(polys, polys)
def test_discrete_product_rule(p, q):
    assert (p * q).fwd_diff() == p.fwd_diff() * q.shift(1) + p * q.fwd_diff()


@given(polys, shifts, shifts, fractions)
def test_shift_composes_and_matches_evaluation(p, j, k, at):
    assert p.shift(j).shift(k) == p.shift(j + k)
    assert p.shift(k)(at) == p(at + k)


@given(polys, polys, fractions)
def test_evaluation_is_a_ring_map(p, q, at):
    assert (p + q)(at) == p(at) + q(at)
    assert (p * q)(at) == p(at) * q(at)


@given(polys, nonzero_polys)
def test_division_with_remainder(p, q):
    quot, rem = p.divmod(q)
    assert quot * q + rem == p
    assert rem.degree < q.degree


@given(small_polys, nonzero_polys, nonzero_polys)
def test_rational_function_field_laws(p, q, r):
    a = RationalFn(p, q)
    b = RationalFn(r)
    assert (a + b) - b == a
    assert (a * b) / b == a


@given(small_polys, small_polys)
@settings(max_examples=50)
def test_diff_operator_composition_matches_application(p, q):
    A = DiffOp((p, q))
    B = DiffOp((q, 1))
    f = RationalFn(p * q + 1)
    assert (A * B).apply(f) == A.apply(B.apply(f))


@given(polys, shifts)
@settings(max_examples=50)
def test_shift_operator_composition_matches_application(p, k):
    A = ShiftOp({k: S, 0: 1})
    B = ShiftOp({-1: p})
    f = RationalFn(S * S + p)
    assert (A * B).apply(f) == A.apply(B.apply(f))
