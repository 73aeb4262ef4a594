"""Equivalence sweep: generating-function values vs. brute force.

For every group in the feasible set with a series-side counterpart, compare
rs proportion, eigenvalue-free proportion, 1-/2-space derangement
proportions, and mean-D as exact rationals. sl/su carry no series of their
own (their values are labeled asymptotic via gl/u), and the full orthogonal
groups o+- only exist here to support the so/omega statistics, so neither
is compared directly.
"""

from __future__ import annotations

from fractions import Fraction

from ..classical import GroupSpec, derangement_series, mean_D, rs_series
from .groups import GroupKey
from .stats import (
    SubspaceKind,
    derangement_proportion,
    eigenvalue_free_proportion,
    mean_D_bruteforce,
    rs_proportion,
    strongly_rs_proportion,
)


def _row(key, stat, series_value, oracle_value):
    return {
        "family": key[0],
        "n": key[1],
        "q": key[2],
        "stat": stat,
        "series": series_value,
        "oracle": oracle_value,
        "ok": series_value == oracle_value,
    }


def _coef(fam, q, kind, n):
    return rs_series(GroupSpec(fam, q), kind, order=n).coefficient(n)


def _full_rows(fam, dims, q):
    """gl/u/sp have every statistic available."""
    rows = []
    for dim in dims:
        n = dim // 2 if fam == "sp" else dim
        key = GroupKey(fam, dim, q)
        g = GroupSpec(fam, q)
        rows.append(_row(key, "rs", _coef(fam, q, "rs", n), rs_proportion(key)))
        rows.append(
            _row(
                key,
                "eigenvalue-free",
                _coef(fam, q, "eigenvalue-free", n),
                eigenvalue_free_proportion(key),
            )
        )
        rows.append(
            _row(
                key,
                "derangement-1",
                derangement_series(g, 1, order=n).coefficient(n),
                derangement_proportion(key, SubspaceKind(1, "any")),
            )
        )
        if dim >= 2:
            rows.append(
                _row(
                    key,
                    "derangement-2",
                    derangement_series(g, 2, order=n).coefficient(n),
                    derangement_proportion(key, SubspaceKind(2, "any")),
                )
            )
        rows.append(_row(key, "mean-D", mean_D(g, n), mean_D_bruteforce(key)))
    return rows


def equivalence_rows():
    rows = []
    rows += _full_rows("gl", [1, 2, 3, 4], 2)
    rows += _full_rows("gl", [1, 2, 3], 3)
    rows += _full_rows("gl", [1, 2], 4)
    rows += _full_rows("gl", [1, 2], 5)
    rows += _full_rows("u", [1, 2, 3], 2)
    rows += _full_rows("u", [2], 3)
    rows += _full_rows("sp", [2, 4], 2)
    rows += _full_rows("sp", [2, 4], 3)
    rows += _full_rows("sp", [2], 5)

    for q, ms in ((2, (1, 2)), (4, (1,))):
        for m in ms:
            for sign in "+-":
                key = GroupKey(f"omega{sign}", 2 * m, q)
                rows.append(
                    _row(key, "rs", _coef(f"omega{sign}", q, "rs", m), rs_proportion(key))
                )

    key = GroupKey("so", 3, 3)
    rows.append(_row(key, "rs", _coef("so-odd", 3, "rs", 1), rs_proportion(key)))
    rows.append(
        _row(
            key,
            "strongly-rs",
            _coef("so-odd", 3, "strongly-rs", 1),
            strongly_rs_proportion(key),
        )
    )

    for q, ms in ((3, (1, 2)), (5, (1,))):
        for m in ms:
            kp, km = GroupKey("so+", 2 * m, q), GroupKey("so-", 2 * m, q)
            avg = (rs_proportion(kp) + rs_proportion(km)) / 2
            rows.append(
                _row(GroupKey("so+-", 2 * m, q), "rs-avg", _coef("so-avg", q, "rs", m), avg)
            )
            savg = (strongly_rs_proportion(kp) + strongly_rs_proportion(km)) / 2
            rows.append(
                _row(
                    GroupKey("so+-", 2 * m, q),
                    "strongly-rs-avg",
                    _coef("so-avg", q, "strongly-rs", m),
                    savg,
                )
            )
    return rows
