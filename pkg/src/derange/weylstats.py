"""Exact cycle statistics for S_n, alternating cosets, B_n, D_n and D_n^-.

Everything is computed by weighted enumeration of (signed) cycle types:
a type of S_n with a_i cycles of length i has probability
1/prod_i(i^{a_i} a_i!), and a signed type with a_i positive and b_i
negative i-cycles has probability 1/prod_i(a_i! b_i! (2i)^{a_i+b_i}).
D_n (resp. D_n^-) is the even (resp. odd) half of B_n by the parity of the
number of negative cycles.

Where a closed generating function exists (derangements in alternating
cosets, fixed-point caps, even-multiplicity constraints) a series route is
also provided; the two routes are cross-checked in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .series import TruncatedSeries
from .partitions import enumerate_partitions

SN_GUARD = 40
BN_GUARD = 25


# -- raw weighted type lists ------------------------------------------------


@lru_cache(maxsize=None)
def sn_cycle_types(n: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """(cycle lengths, class weight) over all types of S_n; weights sum to 1."""
    if not 0 <= n <= SN_GUARD:
        raise ResourceWarning(f"S_n enumeration capped at n <= {SN_GUARD}")
    out = []
    for lam in enumerate_partitions(n):
        w = Fraction(1)
        for i, a in lam.multiplicities().items():
            w /= i**a * factorial(a)
        out.append((lam.parts, w))
    return tuple(out)


@lru_cache(maxsize=None)
def bn_signed_types(
    n: int,
) -> tuple[tuple[tuple[int, ...], tuple[int, ...], Fraction], ...]:
    """(positive lengths, negative lengths, weight) over signed types of B_n."""
    if not 0 <= n <= BN_GUARD:
        raise ResourceWarning(f"B_n enumeration capped at n <= {BN_GUARD}")
    out = []
    for k in range(n + 1):
        for pos in enumerate_partitions(k):
            wp = Fraction(1)
            for i, a in pos.multiplicities().items():
                wp /= factorial(a) * (2 * i) ** a
            for neg in enumerate_partitions(n - k):
                w = wp
                for i, b in neg.multiplicities().items():
                    w /= factorial(b) * (2 * i) ** b
                out.append((pos.parts, neg.parts, w))
    return tuple(out)


# -- constraints ------------------------------------------------------------


@dataclass(frozen=True)
class WeylConstraint:
    """A conjunction of cycle-type conditions.

    group: "sn", "bn", "dn" (even negative-cycle count) or "dn-" (odd).
    fix_k/fix_mode: some sub-multiset of cycles sums to k; mode restricts
      which cycles may be used ("any", "positive", "even", "neg-even",
      "neg-odd" -- the last two constrain the parity of the number of
      negative cycles used in the sub-multiset).
    caps: upper bounds on counts of fixed points / 2-cycles per sign
      (None = unconstrained). For S_n only the positive caps apply.
    neg_parity: 0/1 parity of the total number of negative cycles (B_n only;
      for "dn"/"dn-" the parity is implied by the group).
    all_even / all_positive: every cycle has even length / positive sign.
    """

    group: str = "sn"
    fix_k: int | None = None
    fix_mode: str = "any"
    max_pos_fixed: int | None = None
    max_neg_fixed: int | None = None
    max_pos_two: int | None = None
    max_neg_two: int | None = None
    neg_parity: int | None = None
    all_even: bool = False
    all_positive: bool = False


def _subset_mask(parts) -> int:
    mask = 1
    for p in parts:
        mask |= mask << p
    return mask


def _signed_subset_masks(pos, neg) -> tuple[int, int]:
    """(even, odd) bitmasks of achievable sums by parity of negative cycles used."""
    even, odd = 1, 0
    for p in pos:
        even |= even << p
        odd |= odd << p
    for p in neg:
        even, odd = even | (odd << p), odd | (even << p)
    return even, odd


def _type_satisfies(c: WeylConstraint, pos, neg) -> bool:
    def count(parts, v):
        return sum(1 for p in parts if p == v)

    if c.max_pos_fixed is not None and count(pos, 1) > c.max_pos_fixed:
        return False
    if c.max_neg_fixed is not None and count(neg, 1) > c.max_neg_fixed:
        return False
    if c.max_pos_two is not None and count(pos, 2) > c.max_pos_two:
        return False
    if c.max_neg_two is not None and count(neg, 2) > c.max_neg_two:
        return False
    if c.neg_parity is not None and len(neg) % 2 != c.neg_parity:
        return False
    if c.all_even and any(p % 2 for p in pos + tuple(neg)):
        return False
    if c.all_positive and neg:
        return False
    if c.fix_k is not None:
        k = c.fix_k
        if c.fix_mode == "any":
            ok = bool((_subset_mask(tuple(pos) + tuple(neg)) >> k) & 1) if k <= sum(pos) + sum(neg) else False
        elif c.fix_mode == "positive":
            ok = k <= sum(pos) and bool((_subset_mask(pos) >> k) & 1)
        elif c.fix_mode == "even":
            ev = tuple(p for p in tuple(pos) + tuple(neg) if p % 2 == 0)
            ok = k <= sum(ev) and bool((_subset_mask(ev) >> k) & 1)
        elif c.fix_mode in ("neg-even", "neg-odd"):
            even, odd = _signed_subset_masks(pos, neg)
            mask = even if c.fix_mode == "neg-even" else odd
            ok = bool((mask >> k) & 1)
        else:
            raise ValueError(f"unknown fix mode {c.fix_mode!r}")
        if not ok:
            return False
    return True


def proportion(n: int, c: WeylConstraint) -> Fraction:
    """Exact probability that a uniform element of the group satisfies c."""
    if c.fix_k is not None and not 0 <= c.fix_k <= n:
        raise ValueError("fix_k out of range")
    if c.group == "sn":
        if c.neg_parity is not None or c.fix_mode in ("positive", "neg-even", "neg-odd"):
            raise ValueError("signed constraint on S_n")
        total = Fraction(0)
        for parts, w in sn_cycle_types(n):
            if _type_satisfies(c, parts, ()):
                total += w
        return total
    if c.group in ("bn", "dn", "dn-"):
        parity = c.neg_parity
        scale = Fraction(1)
        if c.group in ("dn", "dn-"):
            if parity is not None:
                raise ValueError("neg_parity is implied by dn/dn-")
            parity = 0 if c.group == "dn" else 1
            scale = Fraction(2)
        total = Fraction(0)
        for pos, neg, w in bn_signed_types(n):
            if parity is not None and len(neg) % 2 != parity:
                continue
            if _type_satisfies(c, pos, neg):
                total += w
        return scale * total
    raise ValueError(f"unknown group {c.group!r}")


# -- series routes ----------------------------------------------------------


def _exp_minus_u(order: int) -> TruncatedSeries:
    return TruncatedSeries.monomial(-1, 1, order).exp()


@lru_cache(maxsize=None)
def _an_coset_series(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    inv1mu = TruncatedSeries.geometric(1, 1, order)
    emu = _exp_minus_u(order)
    base = emu * inv1mu  # derangement proportions of S_n
    alt = (TruncatedSeries.monomial(1, 1, order) + 1) * emu
    return base + alt, base - alt


def an_coset_derangements(n: int, coset: str) -> Fraction:
    """Proportion of derangements in the even/odd coset of S_n (n >= 1)."""
    if coset not in ("even", "odd"):
        raise ValueError("coset must be 'even' or 'odd'")
    order = max(n, 8)
    even, odd = _an_coset_series(order)
    return (even if coset == "even" else odd).coefficient(n)


def sn_gcd_bad(n: int, m: int) -> Fraction:
    """Proportion of S_n whose cycle data (a_i distinct lengths, m_i
    multiplicities) satisfies gcd(a_1 m_1, ..., a_r m_r, m) != 1."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if n > SN_GUARD:
        raise ResourceWarning(f"capped at n <= {SN_GUARD}")
    total = Fraction(0)
    for parts, w in sn_cycle_types(n):
        mult: dict[int, int] = {}
        for p in parts:
            mult[p] = mult.get(p, 0) + 1
        g = m
        for a, ma in mult.items():
            g = math.gcd(g, a * ma)
        if g != 1:
            total += w
    return total


def _poly_cap_factor(order: int, i: int, c: Fraction, cap: int) -> TruncatedSeries:
    """sum_{j=0..cap} (c u^i)^j / j!  (capped cycle-count factor)."""
    cs = [Fraction(0)] * (order + 1)
    term = Fraction(1)
    for j in range(cap + 1):
        if i * j > order:
            break
        cs[i * j] = term / factorial(j)
        term *= c
    return TruncatedSeries(cs, order)


def bn_capped_series(
    order: int,
    max_pos_fixed: int | None = None,
    max_pos_two: int | None = None,
    max_neg_fixed: int | None = None,
    max_neg_two: int | None = None,
    neg_parity: int | None = None,
) -> TruncatedSeries:
    """Series whose u^n coefficient is the B_n proportion with the given
    fixed-point/2-cycle caps and negative-cycle-count parity.

    Built from the B_n cycle index; the parity condition is resolved by
    averaging the sign specialization y = +-1 of the negative cycles.
    """

    def build(y: int) -> TruncatedSeries:
        exp_arg = [Fraction(0)] * (order + 1)
        out = TruncatedSeries.one(order)
        for sign, caps in (
            (1, {1: max_pos_fixed, 2: max_pos_two}),
            (y, {1: max_neg_fixed, 2: max_neg_two}),
        ):
            for i in range(1, order + 1):
                c = Fraction(sign, 2 * i)
                cap = caps.get(i)
                if cap is None:
                    exp_arg[i] += c
                else:
                    out = out * _poly_cap_factor(order, i, c, cap)
        return out * TruncatedSeries(exp_arg, order).exp()

    if neg_parity is None:
        return build(1)
    f_plus, f_minus = build(1), build(-1)
    half = Fraction(1, 2)
    if neg_parity == 0:
        return (f_plus + f_minus) * half
    return (f_plus - f_minus) * half


def bn_even_negcycle_even_mult(n: int, route: str = "auto") -> Fraction:
    """B_n proportion where every even-length negative cycle has even
    multiplicity; enumeration for small n, series route for larger n."""
    if route not in ("auto", "enum", "series"):
        raise ValueError("route must be auto/enum/series")
    if route == "enum" or (route == "auto" and n <= BN_GUARD):
        total = Fraction(0)
        for pos, neg, w in bn_signed_types(n):
            mult: dict[int, int] = {}
            for p in neg:
                mult[p] = mult.get(p, 0) + 1
            if all(i % 2 or m % 2 == 0 for i, m in mult.items()):
                total += w
        return total
    order = n
    exp_arg = [Fraction(0)] * (order + 1)
    for i in range(1, order + 1):
        exp_arg[i] += Fraction(1, 2 * i)  # positive cycles
        if i % 2:
            exp_arg[i] += Fraction(1, 2 * i)  # odd negative cycles
    out = TruncatedSeries(exp_arg, order).exp()
    for i in range(2, order + 1, 2):  # even negative cycles: cosh factors
        cs = [Fraction(0)] * (order + 1)
        j = 0
        while i * j <= order:
            cs[i * j] = Fraction(1, (2 * i) ** j * factorial(j))
            j += 2
        out = out * TruncatedSeries(cs, order)
    return out.coefficient(n)


# -- named asymptotic constants ---------------------------------------------

_CONSTANTS = {
    "3/(4e^{5/4})": lambda: 3 / (4 * math.exp(1.25)),
    "9/(8e)": lambda: 9 / (8 * math.e),
    "195/(128e^{5/4})": lambda: 195 / (128 * math.exp(1.25)),
    "(3/2)/(2e)": lambda: 1.5 / (2 * math.e),
}


def named_constant(name: str) -> float:
    if name not in _CONSTANTS:
        raise KeyError(f"unknown constant {name!r}")
    return _CONSTANTS[name]()


def constant_names() -> tuple[str, ...]:
    return tuple(_CONSTANTS)
