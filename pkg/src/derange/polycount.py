"""Counts of monic irreducible polynomials over F_q by conjugation type.

Five kinds are tracked, all with nonzero constant term:

  N   plain count of monic irreducibles of degree d (z excluded),
  NT  ("N-tilde") self-conjugate under the q -> q-bar twist of F_{q^2},
  MT  ("M-tilde") unordered conjugate pairs of non-self-conjugate ones,
  NS  ("N-star") self-reciprocal under phi(z) -> z^deg(phi) phi(1/z) scaling,
  MS  ("M-star") unordered reciprocal pairs.

All follow from Moebius sums; the star kinds branch on f = 2 (odd
characteristic) vs f = 1 (characteristic two).
"""

from __future__ import annotations

from functools import lru_cache

# kind tags
N = "N"
NT = "NT"
MT = "MT"
NS = "NS"
MS = "MS"

KINDS = (N, NT, MT, NS, MS)


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius needs n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def prime_power_info(q: int) -> tuple[int, int, int]:
    """(characteristic p, exponent e, f) for a prime power q = p^e.

    f = 2 when the characteristic is odd, else 1.
    """
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    m = q
    while p * p <= m:
        if m % p == 0:
            break
        p += 1 if p == 2 else 2
    else:
        p = m
    e = 0
    while m > 1:
        if m % p:
            raise ValueError(f"{q} is not a prime power")
        m //= p
        e += 1
    return p, e, 2 if p % 2 else 1


def char_parity_f(q: int) -> int:
    return prime_power_info(q)[2]


def count(kind: str, q: int, d: int) -> int:
    """Exact count of the given kind in degree d over F_q."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    p, _, f = prime_power_info(q)

    if kind == N:
        if d == 1:
            return q - 1  # z itself is excluded
        return sum(moebius(r) * q ** (d // r) for r in divisors(d)) // d

    if kind == NT:
        # self-conjugate irreducibles over F_{q^2}: none in even degree
        if d % 2 == 0:
            return 0
        return sum(moebius(r) * (q ** (d // r) + 1) for r in divisors(d)) // d

    if kind == MT:
        if d == 1:
            return (q * q - q - 2) // 2
        if d % 2 == 1:
            return sum(
                moebius(r) * (q ** (2 * d // r) - q ** (d // r))
                for r in divisors(d)
            ) // (2 * d)
        return sum(moebius(r) * q ** (2 * d // r) for r in divisors(d)) // (2 * d)

    if kind == NS:
        if d == 1:
            return f
        if d % 2 == 1:
            return 0
        odd_divs = [r for r in divisors(d) if r % 2 == 1]
        return sum(moebius(r) * (q ** (d // (2 * r)) + 1 - f) for r in odd_divs) // d

    if kind == MS:
        if d == 1:
            return (q - f - 1) // 2
        if d % 2 == 1:
            return count(N, q, d) // 2
        return (count(N, q, d) - count(NS, q, d)) // 2

    raise ValueError(f"unknown kind {kind!r}")
