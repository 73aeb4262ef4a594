from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derange.series import (
    DualSeries,
    TruncatedSeries,
    alternating_factor,
    euler_factor,
)

ORDER = 8

fracs = st.fractions(
    min_value=-3, max_value=3, max_denominator=6
)
series_st = st.lists(fracs, min_size=ORDER + 1, max_size=ORDER + 1).map(
    lambda cs: TruncatedSeries(cs, ORDER)
)


@given(series_st, series_st, series_st)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a


@given(series_st)
@settings(max_examples=60, deadline=None)
def test_inverse_round_trip(s):
    s = s - s.coefficient(0) + 1  # force constant term 1
    assert s * s.inverse() == TruncatedSeries.one(ORDER)


@given(series_st, st.integers(min_value=1, max_value=4))
@settings(max_examples=40, deadline=None)
def test_pow_rational_root(s, k):
    s = s - s.coefficient(0) + 1
    root = s.pow_rational(Fraction(1, k))
    out = TruncatedSeries.one(ORDER)
    for _ in range(k):
        out = out * root
    assert out == s


@given(series_st, series_st)
@settings(max_examples=40, deadline=None)
def test_exp_additivity(a, b):
    a = a - a.coefficient(0)
    b = b - b.coefficient(0)
    assert (a + b).exp() == a.exp() * b.exp()


def test_geometric_is_reciprocal():
    g = TruncatedSeries.geometric(1, 1, ORDER)
    lin = TruncatedSeries.one(ORDER) - TruncatedSeries.monomial(1, 1, ORDER)
    assert g * lin == TruncatedSeries.one(ORDER)


def test_coefficient_out_of_range():
    s = TruncatedSeries.one(4)
    with pytest.raises(IndexError):
        s.coefficient(5)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_euler_factor_low_coefficients(q):
    # prod_{i>=1} (1 - u/q^i): elementary symmetric sums of 1/q^i
    s = euler_factor(6, 1, 1, q)
    e1 = Fraction(1, q - 1)
    p2 = Fraction(1, q * q - 1)
    assert s.coefficient(1) == -e1
    assert s.coefficient(2) == (e1 * e1 - p2) / 2


@pytest.mark.parametrize("q", [2, 3, 5])
def test_euler_factor_inverse_is_reciprocal(q):
    a = euler_factor(10, 2, 1, q)
    b = euler_factor(10, 2, 1, q, inverse=True)
    assert a * b == TruncatedSeries.one(10)


@pytest.mark.parametrize("q", [2, 3])
def test_alternating_factor_sign_pattern(q):
    # prod_i (1 + (-1)^i u/q^i): u-coefficient is -1/q + 1/q^2 - ... = -1/(q+1)
    s = alternating_factor(6, 1, 1, q)
    assert s.coefficient(1) == Fraction(-1, q + 1)
    inv = alternating_factor(6, 1, 1, q, inverse=True)
    assert s * inv == TruncatedSeries.one(6)
    assert inv.coefficient(1) == Fraction(1, q + 1)


@given(series_st, series_st)
@settings(max_examples=40, deadline=None)
def test_dual_product_rule(a, b):
    da = DualSeries(a, a)  # derivative slot can hold any series
    db = DualSeries(b, TruncatedSeries.one(ORDER))
    prod = da * db
    assert prod.value == a * b
    assert prod.der == a * b + a * TruncatedSeries.one(ORDER)
