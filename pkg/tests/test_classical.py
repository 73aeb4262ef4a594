from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derange import classical as cl
from derange.classical import ActionSpec, GroupSpec
from derange.series import TruncatedSeries


@pytest.mark.parametrize("name", cl.IDENTITIES)
@pytest.mark.parametrize("q", [2, 3])
def test_identities_small(name, q):
    rep = cl.verify_identity(name, q, 18)
    assert rep["ok"], rep


@pytest.mark.parametrize(
    "family,q", [("gl", 2), ("gl", 3), ("u", 2), ("sp", 2), ("sp", 3),
                 ("omega+", 2), ("omega-", 2), ("so-odd", 3), ("so-avg", 3)]
)
def test_rs_coefficients_are_probabilities(family, q):
    s = cl.rs_series(GroupSpec(family, q), "rs", 20)
    for n in range(21):
        assert 0 <= s.coefficient(n) <= 1


def test_gl_series_known_values():
    s = cl.rs_series(GroupSpec("gl", 2), "rs", 4)
    assert s.coefficient(2) == Fraction(1, 3)
    assert s.coefficient(3) == Fraction(13, 21)


def test_gl_limit_exact():
    for q in (2, 3, 4, 7):
        value, bound = cl.rs_limit(GroupSpec("gl", q))
        assert value == 1 - 1 / q
        assert bound == 0


def test_limits_always_carry_bounds():
    for family, q in [("sp", 2), ("u", 3), ("omega+", 4), ("so-avg", 5)]:
        value, bound = cl.rs_limit(GroupSpec(family, q))
        assert 0 < value < 1
        assert 0 <= bound < 1e-6


def test_sl_su_alias_to_gl_u():
    assert cl.rs_series(GroupSpec("sl", 2), "rs", 6) == cl.rs_series(
        GroupSpec("gl", 2), "rs", 6
    )
    assert cl.rs_series(GroupSpec("su", 2), "rs", 6) == cl.rs_series(
        GroupSpec("u", 2), "rs", 6
    )


def test_omega_requires_even_q():
    with pytest.raises(ValueError):
        cl.rs_series(GroupSpec("omega+", 3), "rs", 4)
    with pytest.raises(ValueError):
        cl.rs_series(GroupSpec("so-odd", 2), "rs", 4)


def test_omega_pair_sum_identity_small():
    q, order = 2, 12
    lhs = cl.rs_series(GroupSpec("omega+", q), "rs", order) + cl.rs_series(
        GroupSpec("omega-", q), "rs", order
    )
    pref = (
        TruncatedSeries.monomial(Fraction(1, 2 * (q - 1)) + Fraction(1, 2 * (q + 1)), 1, order)
        + 1
    )
    rhs = 2 * pref * cl.rs_series(GroupSpec("sp", q), "rs", order)
    assert lhs == rhs


def test_lehrer_class_count_formula():
    assert cl.rs_class_count_gl(2, 2) == 1
    assert cl.rs_class_count_gl(2, 3) == 4
    assert cl.rs_class_count_gl(3, 2) == 3
    assert cl.rs_class_count_gl(2, 4) == 9


def test_mean_D_anchors():
    assert cl.mean_D(GroupSpec("gl", 2), 2) == Fraction(4, 3)
    assert cl.mean_D(GroupSpec("sp", 2), 1) == Fraction(4, 3)
    assert cl.mean_D(GroupSpec("sp", 3), 1) == Fraction(3, 2)
    assert cl.mean_D(GroupSpec("u", 2), 2) == Fraction(4, 3)


def test_c1_bound():
    assert cl.c1_bound(2) <= 28
    for q in (2, 3):
        cap = cl.c1_bound(q)
        for n in range(1, 16):
            assert cl.mean_D(GroupSpec("gl", q), n) <= cap


def test_derangement_series_anchors():
    assert cl.derangement_series(GroupSpec("gl", 2), 2, 3).coefficient(3) == Fraction(2, 7)
    assert cl.derangement_series(GroupSpec("sp", 3), 2, 2).coefficient(2) == Fraction(1, 5)
    with pytest.raises(ValueError):
        cl.derangement_series(GroupSpec("gl", 2), 3, 4)


def test_finite_n_lower_bound_is_difference():
    g = GroupSpec("gl", 2)
    rep = cl.derangement_lower_bound(g, "k-space", k=2, mode="finite-n", n=6)
    ingredients = dict(rep["ingredients"])
    assert rep["value"] == ingredients["rs[n]"] - ingredients["weyl"]


@given(
    st.fractions(min_value=0, max_value=1, max_denominator=30),
    st.fractions(min_value=0, max_value=1, max_denominator=30),
    st.fractions(min_value=0, max_value="1/10", max_denominator=30),
)
@settings(max_examples=60, deadline=None)
def test_lower_bound_monotone_in_ingredients(rs, weyl, eps):
    # the difference combinator improves when rs grows or the cap shrinks
    base = rs - weyl
    assert (rs + eps) - weyl >= base
    assert rs - (weyl - eps) >= base
    # and the product combinator does the same
    base_p = rs * (1 - weyl)
    assert (rs + eps) * (1 - weyl) >= base_p
    assert rs * (1 - (weyl - eps)) >= base_p if weyl <= 1 else True


def test_weyl_upper_bound_is_probability_cap():
    for family, action in [
        ("gl", ActionSpec("k-space", 8, 2)),
        ("u", ActionSpec("nondegenerate", 8, 1)),
        ("sp", ActionSpec("totally-singular", 8, 1)),
    ]:
        q = 3 if family != "sp" else 3
        bound = cl.weyl_upper_bound(GroupSpec(family, q), action)
        assert 0 <= bound <= 1


def test_all_scenarios_pass():
    for rep in cl.all_scenarios():
        assert rep["ok"], rep["name"]


def test_scenario_registry_lookup():
    names = cl.scenario_names()
    assert "7/12bound" in names
    rep = cl.bound_scenario("7/12bound")
    assert rep["ok"]
    with pytest.raises(KeyError):
        cl.bound_scenario("nope")
