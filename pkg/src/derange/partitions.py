"""Integer partitions, q-Pochhammer products, and GL(n,q) class data.

A GL(n,q) conjugacy class is determined by assigning a partition to each
monic irreducible polynomial (nonzero constant term), with total weighted
size n. Class data here are keyed by polynomial *degree* only -- the
centralizer size depends only on deg(phi) -- together with the number of
ways of picking distinct polynomials of that degree, which collapses the
enumeration to polynomial-count arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator

from . import polycount

PARTITION_GUARD = 60


class PartitionData:
    """A partition as a weakly decreasing tuple of positive parts."""

    __slots__ = ("parts", "size")

    def __init__(self, parts):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        self.parts = parts
        self.size = sum(parts)

    def multiplicity(self, i: int) -> int:
        return sum(1 for p in self.parts if p == i)

    def multiplicities(self) -> dict[int, int]:
        m: dict[int, int] = {}
        for p in self.parts:
            m[p] = m.get(p, 0) + 1
        return m

    def conjugate(self) -> "PartitionData":
        if not self.parts:
            return PartitionData(())
        return PartitionData(
            tuple(
                sum(1 for p in self.parts if p >= i)
                for i in range(1, self.parts[0] + 1)
            )
        )

    def conjugate_square_sum(self) -> int:
        """Sum of (lambda'_i)^2 over columns."""
        return sum(c * c for c in self.conjugate().parts)

    def __eq__(self, other):
        return isinstance(other, PartitionData) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"PartitionData{self.parts}"


@lru_cache(maxsize=None)
def _partitions_max(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_max(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int) -> list[PartitionData]:
    """All partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > PARTITION_GUARD:
        raise ResourceWarning(f"partition enumeration capped at n <= {PARTITION_GUARD}")
    return [PartitionData(p) for p in _partitions_max(n, n)]


def subset_sums(p: PartitionData) -> set[int]:
    """All sums of sub-multisets of the parts (0 and |lambda| included)."""
    mask = 1
    for part in p.parts:
        mask |= mask << part
    return {i for i in range(p.size + 1) if (mask >> i) & 1}


def q_pochhammer(q: int, j: int) -> Fraction:
    """(1/q)_j = (1 - 1/q)(1 - 1/q^2) ... (1 - 1/q^j)."""
    if j < 0:
        raise ValueError("j must be >= 0")
    out = Fraction(1)
    for i in range(1, j + 1):
        out *= 1 - Fraction(1, q**i)
    return out


class GLClassDatum:
    """Degree-keyed class datum: ((d, PartitionData), ...) with repeats allowed."""

    __slots__ = ("entries", "n")

    def __init__(self, entries):
        entries = tuple(sorted(entries, key=lambda e: (e[0], e[1].parts)))
        if any(d < 1 or lam.size == 0 for d, lam in entries):
            raise ValueError("degrees must be >= 1 and partitions nonempty")
        self.entries = entries
        self.n = sum(d * lam.size for d, lam in entries)

    def __repr__(self):
        return f"GLClassDatum({self.entries!r})"


def gl_centralizer_size(q: int, datum: GLClassDatum) -> int:
    """Centralizer order for the class datum, as an exact integer."""
    polycount.prime_power_info(q)
    out = Fraction(1)
    for d, lam in datum.entries:
        qd = q**d
        out *= Fraction(qd) ** lam.conjugate_square_sum()
        for m in lam.multiplicities().values():
            out *= q_pochhammer(qd, m)
    if out.denominator != 1 or out <= 0:
        raise ValueError("centralizer size did not clear to a positive integer")
    return out.numerator


def _partition_multisets(total: int, options: list[PartitionData]) -> Iterator[list[PartitionData]]:
    """Multisets of nonempty partitions with sizes summing to `total`."""

    def rec(remaining: int, start: int):
        if remaining == 0:
            yield []
            return
        for idx in range(start, len(options)):
            lam = options[idx]
            if lam.size > remaining:
                continue
            for rest in rec(remaining - lam.size, idx):
                yield [lam] + rest

    yield from rec(total, 0)


def enumerate_gl_class_data(n: int, q: int) -> Iterator[tuple[GLClassDatum, int]]:
    """Yield (datum, ways): `ways` counts the conjugacy classes of GL(n,q)
    sharing this degree shape (choices of distinct polynomials per degree)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    all_parts = [p for m in range(1, n + 1) for p in enumerate_partitions(m)]

    def per_degree(d: int, budget: int):
        """(entries, ways) options for degree d absorbing weight d*j <= budget."""
        navail = polycount.count(polycount.N, q, d)
        opts = [([], 1)]
        for w in range(d, budget + 1, d):
            usable = [p for p in all_parts if p.size <= w // d]
            for ms in _partition_multisets(w // d, usable):
                j = len(ms)
                if j > navail:
                    continue
                falling = 1
                for t in range(j):
                    falling *= navail - t
                reps: dict[PartitionData, int] = {}
                for lam in ms:
                    reps[lam] = reps.get(lam, 0) + 1
                denom = 1
                for r in reps.values():
                    denom *= factorial(r)
                ways = falling // denom
                opts.append(([(d, lam) for lam in ms], ways))
        return opts

    def rec(d: int, remaining: int, acc_entries, acc_ways):
        if remaining == 0:
            yield GLClassDatum(acc_entries), acc_ways
            return
        if d > remaining:
            return
        for entries, ways in per_degree(d, remaining):
            used = sum(e[0] * e[1].size for e in entries)
            yield from rec(d + 1, remaining - used, acc_entries + entries, acc_ways * ways)

    yield from rec(1, n, [], 1)
