import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derange import weylstats as ws

# classic derangement proportions D_n/n!
DERANGEMENTS = {
    1: Fraction(0),
    2: Fraction(1, 2),
    3: Fraction(1, 3),
    4: Fraction(3, 8),
    5: Fraction(11, 30),
    6: Fraction(53, 144),
    7: Fraction(103, 280),
}


@pytest.mark.parametrize("n,want", sorted(DERANGEMENTS.items()))
def test_sn_derangements(n, want):
    fixing = ws.proportion(n, ws.WeylConstraint("sn", fix_k=1))
    assert 1 - fixing == want


@pytest.mark.parametrize("k", range(1, 11))
def test_all_even_proportion(k):
    got = ws.proportion(2 * k, ws.WeylConstraint("bn", all_even=True))
    assert got == Fraction(math.comb(2 * k, k), 4**k)


def test_an_coset_small():
    assert ws.an_coset_derangements(3, "even") == Fraction(2, 3)
    assert ws.an_coset_derangements(3, "odd") == Fraction(0)
    for n in range(5, 15):
        for coset in ("even", "odd"):
            assert ws.an_coset_derangements(n, coset) >= Fraction(1, 3)


@given(st.integers(min_value=1, max_value=12))
@settings(max_examples=24, deadline=None)
def test_bn_parity_split(n):
    even = ws.proportion(n, ws.WeylConstraint("bn", neg_parity=0))
    odd = ws.proportion(n, ws.WeylConstraint("bn", neg_parity=1))
    assert even == odd == Fraction(1, 2)


@given(st.integers(min_value=2, max_value=14))
@settings(max_examples=24, deadline=None)
def test_dn_matches_bn_parity_sector(n):
    # dn proportions are bn proportions conditioned on even negative count
    base = ws.WeylConstraint("dn", fix_k=1, fix_mode="positive")
    via_bn = ws.WeylConstraint("bn", fix_k=1, fix_mode="positive", neg_parity=0)
    assert ws.proportion(n, base) == 2 * ws.proportion(n, via_bn)


@pytest.mark.parametrize("n", range(2, 13))
def test_fixing_monotone_in_k(n):
    # fixing some k-set gets no easier as k grows toward n/2
    vals = [
        ws.proportion(n, ws.WeylConstraint("sn", fix_k=k))
        for k in range(1, n // 2 + 1)
    ]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_bn_even_negcycle_routes_agree():
    for n in range(1, 11):
        a = ws.bn_even_negcycle_even_mult(n, route="enum")
        b = ws.bn_even_negcycle_even_mult(n, route="series")
        assert a == b


def test_named_constants():
    assert ws.named_constant("9/(8e)") == pytest.approx(9 / (8 * math.e))
    assert set(ws.constant_names()) == {
        "3/(4e^{5/4})",
        "9/(8e)",
        "195/(128e^{5/4})",
        "(3/2)/(2e)",
    }
    with pytest.raises(KeyError):
        ws.named_constant("phi")


def test_guard_rails():
    with pytest.raises(ResourceWarning):
        ws.sn_cycle_types(41)
    with pytest.raises(ResourceWarning):
        ws.bn_signed_types(26)
