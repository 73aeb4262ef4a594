"""Brute-force ground truth for small classical groups.

Everything here enumerates honestly: group elements one by one (checked
against the order formulas), characteristic polynomials by exact division,
subspaces by echelon representatives. It exists to verify the generating
function modules, so it shares no code path with them.
"""

from .fields import FiniteField
from .groups import (
    FEASIBLE,
    GroupKey,
    enumerate_group,
    feasible_groups,
    group_order,
)
from .stats import (
    SubspaceKind,
    char_poly,
    class_count_rs,
    derangement_proportion,
    enumerate_subspaces,
    eigenvalue_free_proportion,
    factor_profile,
    is_eigenvalue_free,
    is_rs,
    is_strongly_rs,
    mean_D_bruteforce,
    rs_and_fixing_proportion,
    rs_proportion,
    strongly_rs_proportion,
)

__all__ = [
    "FiniteField",
    "FEASIBLE",
    "GroupKey",
    "SubspaceKind",
    "char_poly",
    "class_count_rs",
    "derangement_proportion",
    "eigenvalue_free_proportion",
    "enumerate_group",
    "enumerate_subspaces",
    "factor_profile",
    "feasible_groups",
    "group_order",
    "is_eigenvalue_free",
    "is_rs",
    "is_strongly_rs",
    "mean_D_bruteforce",
    "rs_and_fixing_proportion",
    "rs_proportion",
    "strongly_rs_proportion",
]
