"""End-to-end acceptance checks: exact identities, oracle equivalence,
limit values, Weyl statistics, and the registered inequality suite."""

import math
import time
from fractions import Fraction

import pytest

from derange import classical as cl
from derange import weylstats as ws
from derange.classical import GroupSpec
from derange.oracle import GroupKey, class_count_rs
from derange.oracle.crosscheck import equivalence_rows
from derange.series import TruncatedSeries

# -- 1: exact identity suite ------------------------------------------------


def test_identity_suite_exact_to_order_50():
    start = time.monotonic()
    for name in cl.IDENTITIES:
        for q in (2, 3, 4, 5, 8, 9):
            rep = cl.verify_identity(name, q, 50)
            assert rep["max_deviation"] == 0, (name, q)
    assert time.monotonic() - start < 30


# -- 2: generating functions match brute force ------------------------------


def test_oracle_equivalence_exact():
    start = time.monotonic()
    rows = equivalence_rows()
    bad = [r for r in rows if not r["ok"]]
    assert bad == []
    by = {(r["family"], r["n"], r["q"], r["stat"]): r["oracle"] for r in rows}
    assert by[("gl", 2, 2, "rs")] == Fraction(1, 3)
    assert by[("gl", 2, 2, "mean-D")] == Fraction(4, 3)
    assert by[("gl", 2, 2, "derangement-1")] == Fraction(1, 3)
    assert time.monotonic() - start < 300


# -- 3: regular semisimple class counts -------------------------------------


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_class_count_formula_matches_enumeration(n, q):
    formula = cl.rs_class_count_gl(n, q)
    assert formula == (q - 1) * (q**n - (-1) ** n) // (q + 1)
    assert formula == class_count_rs(GroupKey("gl", n, q))


# -- 4: general linear limit ------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4])
def test_gl_limit_and_convergence(q):
    value, bound = cl.rs_limit(GroupSpec("gl", q))
    assert value == 1 - 1 / q and bound == 0
    coef = cl.rs_series(GroupSpec("gl", q), "rs", 60).coefficient(60)
    assert abs(coef - Fraction(q - 1, q)) <= Fraction(1, 10**4)


# -- 5: family limits vs. stated decimal targets ----------------------------

_SP_NOTE = (
    "stated target exceeds the exact limit of the product formula; the "
    "series and small-rank brute force both converge to the smaller value"
)

SP_TARGETS = [
    (2, 0.283),
    (3, 0.348),
    (4, 0.453),
    pytest.param(5, 0.654, marks=pytest.mark.xfail(strict=True, reason=_SP_NOTE)),
    pytest.param(7, 0.745, marks=pytest.mark.xfail(strict=True, reason=_SP_NOTE)),
    (8, 0.686),
]


@pytest.mark.parametrize("q,target", SP_TARGETS)
def test_sp_limits(q, target):
    value, bound = cl.rs_limit(GroupSpec("sp", q))
    assert bound <= 1e-6
    assert value + bound >= target


@pytest.mark.parametrize("q,target", [(2, 0.414), (3, 0.628), (4, 0.72), (5, 0.72)])
def test_u_limits(q, target):
    value, bound = cl.rs_limit(GroupSpec("u", q))
    assert bound <= 1e-6
    assert value + bound >= target


@pytest.mark.parametrize("q", [2, 4, 8])
def test_omega_limits_scale_sp(q):
    sp, sp_bound = cl.rs_limit(GroupSpec("sp", q))
    scale = 1 + q / (q * q - 1)
    for sign in "+-":
        value, bound = cl.rs_limit(GroupSpec(f"omega{sign}", q))
        assert bound <= 1e-6
        assert abs(value - scale * sp) <= bound + scale * sp_bound + 1e-12


def test_so_odd_q_limits():
    value, bound = cl.rs_limit(GroupSpec("so-odd", 3))
    assert bound <= 1e-6 and value + bound >= 0.478
    value, bound = cl.rs_limit(GroupSpec("so-avg", 3))
    assert bound <= 1e-6 and value + bound >= 0.657


# -- 6: orthogonal sum identity ---------------------------------------------


@pytest.mark.parametrize("q", [2, 4])
def test_orthogonal_type_sum_identity(q):
    order = 40
    lhs = cl.rs_series(GroupSpec("omega+", q), "rs", order) + cl.rs_series(
        GroupSpec("omega-", q), "rs", order
    )
    pref = (
        TruncatedSeries.monomial(
            Fraction(1, 2 * (q - 1)) + Fraction(1, 2 * (q + 1)), 1, order
        )
        + 1
    )
    rhs = 2 * pref * cl.rs_series(GroupSpec("sp", q), "rs", order)
    assert lhs == rhs


# -- 7: Weyl group statistics -----------------------------------------------


def test_weyl_statistics_suite():
    start = time.monotonic()
    # fixing a k-set is never more likely than 2/3
    for n in range(2, 19):
        for k in range(1, n // 2 + 1):
            assert ws.proportion(n, ws.WeylConstraint("sn", fix_k=k)) <= Fraction(2, 3)
    # all cycles even has the exact central-binomial form
    for k in range(1, 13):
        assert ws.proportion(2 * k, ws.WeylConstraint("bn", all_even=True)) == Fraction(
            math.comb(2 * k, k), 4**k
        )
    # positive-cycle k-set fixing is dominated by the all-even proportion
    for n in range(2, 16):
        for k in range(1, n + 1):
            cap = Fraction(math.comb(2 * k, k), 4**k)
            bn = ws.proportion(
                n, ws.WeylConstraint("bn", fix_k=k, fix_mode="positive")
            )
            assert bn <= cap
            if n > k:
                # the two cosets need not agree exactly (D_2 vs its coset at
                # k=1 gives 1/4 vs 1/2) but both respect the all-even cap
                dn = ws.proportion(
                    n, ws.WeylConstraint("dn", fix_k=k, fix_mode="positive")
                )
                dnm = ws.proportion(
                    n, ws.WeylConstraint("dn-", fix_k=k, fix_mode="positive")
                )
                assert dn <= cap and dnm <= cap
            if n == k:
                assert bn == ws.proportion(
                    n, ws.WeylConstraint("bn", all_positive=True)
                )
    # all-positive D_k elements are twice as frequent as the all-even bound
    for k in range(1, 13):
        assert ws.proportion(k, ws.WeylConstraint("dn", all_positive=True)) == 2 * Fraction(
            math.comb(2 * k, k), 4**k
        )
    # parity-restricted k-set fixing never exceeds 1/2
    for n in range(2, 16):
        for k in range(1, n + 1):
            for group in ("bn", "dn", "dn-"):
                if group != "bn" and n <= k:
                    continue
                for mode in ("neg-even", "neg-odd"):
                    assert ws.proportion(
                        n, ws.WeylConstraint(group, fix_k=k, fix_mode=mode)
                    ) <= Fraction(1, 2)
    # alternating-coset derangements
    for n in range(5, 41):
        for coset in ("even", "odd"):
            assert ws.an_coset_derangements(n, coset) >= Fraction(1, 3)
    assert time.monotonic() - start < 120


# -- 8: named constants and their finite-n counterparts ---------------------

CONSTANT_CASES = [
    ("3/(4e^{5/4})", 0.215, dict(max_pos_fixed=0, max_pos_two=0, max_neg_fixed=1)),
    ("9/(8e)", 0.414, dict(max_pos_fixed=1, max_neg_fixed=1)),
    ("195/(128e^{5/4})", 0.437, dict(max_pos_fixed=1, max_pos_two=1, max_neg_fixed=2)),
    ("(3/2)/(2e)", 0.276, dict(max_pos_fixed=0, max_neg_fixed=1, max_pos_two=None)),
]


@pytest.mark.parametrize("name,cap,caps", CONSTANT_CASES)
def test_constants_and_convergence(name, cap, caps):
    value = ws.named_constant(name)
    assert value <= cap
    if name == "(3/2)/(2e)":
        caps = {k: v for k, v in caps.items() if v is not None}
    for parity in (0, 1):
        series = ws.bn_capped_series(40, neg_parity=parity, **caps)
        assert abs(float(series.coefficient(40)) - value) <= 2e-3


# -- 9: mean-D caps ---------------------------------------------------------


def test_mean_D_bounded_by_c1():
    assert 27 < cl.c1_bound(2) <= 28
    for q in (2, 3, 4, 5):
        cap = cl.c1_bound(q)
        for n in range(1, 41):
            assert cl.mean_D(GroupSpec("gl", q), n) <= cap


# -- 10: registered inequality scenarios ------------------------------------


def test_all_bound_scenarios_recompute_and_pass():
    reports = cl.all_scenarios()
    assert len(reports) >= 50
    for rep in reports:
        assert rep["ok"], rep["name"]
    names = cl.scenario_names()
    for required in (
        "manycases-q2",        # .283 * (1 - 7/12) >= .11
        "smallsymplec-q2",     # (2/3) - (3/5) >= 1/16 route
        "U-ts-q2",             # .414 - 3/8 >= 1/26
        "glfiniteregss-q2",    # <= 5/6
        "limiting-q2",         # >= 1/4
        "7/12bound",           # >= .4
    ):
        assert required in names
