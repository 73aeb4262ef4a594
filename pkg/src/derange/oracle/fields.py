"""Small finite fields with explicit multiplication tables.

Elements are the integers 0..q-1. For prime q this is arithmetic mod p;
for q = p^2 the element a + b*p stands for a + b*x modulo a fixed
irreducible quadratic (x^2+x+1 for p = 2, x^2 - r for odd p with r the
smallest non-residue). Tables are tiny (q <= 9 in practice) so everything
is precomputed.
"""

from __future__ import annotations

from functools import lru_cache

from ..polycount import prime_power_info


def _smallest_nonresidue(p: int) -> int:
    squares = {(x * x) % p for x in range(1, p)}
    for r in range(2, p):
        if r not in squares:
            return r
    raise ValueError(f"no quadratic non-residue mod {p}")


class FiniteField:
    """F_q for q = p or p^2, with add/mul/inv/conjugation tables."""

    def __init__(self, q: int):
        p, e, _ = prime_power_info(q)
        if e > 2:
            raise ValueError("only prime fields and quadratic extensions are supported")
        self.q = q
        self.p = p
        self.degree = e
        if e == 1:
            self.add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            if p == 2:
                red = (1, 1)  # x^2 = x + 1
            else:
                red = (_smallest_nonresidue(p), 0)  # x^2 = r
            self.add = [
                [(a % p + b % p) % p + ((a // p + b // p) % p) * p for b in range(q)]
                for a in range(q)
            ]

            def mul2(a: int, b: int) -> int:
                a0, a1 = a % p, a // p
                b0, b1 = b % p, b // p
                c0 = a0 * b0
                c1 = a0 * b1 + a1 * b0
                c2 = a1 * b1
                return (c0 + c2 * red[0]) % p + ((c1 + c2 * red[1]) % p) * p

            self.mul = [[mul2(a, b) for b in range(q)] for a in range(q)]
        self.neg = [0] * q
        for a in range(q):
            for b in range(q):
                if self.add[a][b] == 0:
                    self.neg[a] = b
                    break
        self.inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul[a][b] == 1:
                    self.inv[a] = b
                    break
        # Frobenius x -> x^p; the nontrivial automorphism when degree == 2
        self.frob = [self.power(a, p) for a in range(q)]
        self.conj = self.frob if e == 2 else list(range(q))
        self.elements = tuple(range(q))

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def power(self, a: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self.mul[out][a]
        return out

    def __repr__(self):
        return f"FiniteField({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)
