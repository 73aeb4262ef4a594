"""Exact matrix and polynomial arithmetic over the small fields.

Matrices are tuples of row tuples of field elements (ints); polynomials
are tuples of coefficients in ascending order with no trailing zeros.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct

from .fields import FiniteField


def identity(F: FiniteField, n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(F: FiniteField, A, B):
    n = len(A)
    m = len(B[0])
    k = len(B)
    add, mul = F.add, F.mul
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            s = 0
            for t in range(k):
                s = add[s][mul[Ai[t]][B[t][j]]]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(F: FiniteField, A, v):
    add, mul = F.add, F.mul
    out = []
    for row in A:
        s = 0
        for a, x in zip(row, v):
            s = add[s][mul[a][x]]
        out.append(s)
    return tuple(out)


def transpose(A):
    return tuple(zip(*A))


def conj_transpose(F: FiniteField, A):
    c = F.conj
    return tuple(tuple(c[x] for x in col) for col in zip(*A))


def scale_vec(F: FiniteField, c, v):
    mul = F.mul
    return tuple(mul[c][x] for x in v)


def add_vec(F: FiniteField, u, v):
    add = F.add
    return tuple(add[a][b] for a, b in zip(u, v))


def rref(F: FiniteField, rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = inv[rows[r][c]]
        rows[r] = [mul[pv][x] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = neg[rows[i][c]]
                rows[i] = [add[x][mul[f][y]] for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank(F: FiniteField, rows) -> int:
    return len(rref(F, rows)[0])


def kernel_dim(F: FiniteField, A) -> int:
    return len(A[0]) - rank(F, A) if A else 0


def det(F: FiniteField, A) -> int:
    rows = [list(r) for r in A]
    n = len(rows)
    mul, inv, add, neg = F.mul, F.inv, F.add, F.neg
    d = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            d = mul[d][neg[1]]
        d = mul[d][rows[c][c]]
        pv = inv[rows[c][c]]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = neg[mul[rows[i][c]][pv]]
                rows[i] = [add[x][mul[f][y]] for x, y in zip(rows[i], rows[c])]
    return d


# -- polynomials ------------------------------------------------------------


def _trim(cs):
    cs = list(cs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_mul(F: FiniteField, f, g):
    add, mul = F.add, F.mul
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = add[out[i + j]][mul[a][b]]
    return _trim(out)


def poly_divmod(F: FiniteField, f, g):
    """Quotient and remainder of f by g (g nonzero)."""
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    f = list(f)
    dg = len(g) - 1
    lead_inv = inv[g[-1]]
    if len(f) - 1 < dg:
        return (0,), _trim(f)
    quot = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = mul[f[i]][lead_inv]
        if c:
            quot[i - dg] = c
            for j, b in enumerate(g):
                f[i - dg + j] = add[f[i - dg + j]][neg[mul[c][b]]]
    return _trim(quot), _trim(f)


def char_poly(F: FiniteField, A):
    """Characteristic polynomial det(zI - A), monic, ascending coefficients.

    Computed by cofactor expansion of the polynomial matrix; n stays <= 6.
    """
    n = len(A)
    neg = F.neg
    entries = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                entries[(i, j)] = _trim((neg[A[i][j]], 1))
            else:
                entries[(i, j)] = _trim((neg[A[i][j]],))

    @lru_cache(maxsize=None)
    def minor(rows, cols):
        if len(rows) == 1:
            return entries[(rows[0], cols[0])]
        total = (0,)
        r0 = rows[0]
        rest = rows[1:]
        for idx, c in enumerate(cols):
            e = entries[(r0, c)]
            if e == (0,):
                continue
            sub = minor(rest, cols[:idx] + cols[idx + 1 :])
            term = poly_mul(F, e, sub)
            if idx % 2:
                term = tuple(neg[x] for x in term)
            total = _trim(
                [
                    F.add[a][b]
                    for a, b in zip(
                        list(total) + [0] * (len(term) - len(total)),
                        list(term) + [0] * (len(total) - len(term)),
                    )
                ]
            )
        return total

    out = minor(tuple(range(n)), tuple(range(n)))
    minor.cache_clear()
    return out


@lru_cache(maxsize=None)
def monic_irreducibles(q: int, max_deg: int):
    """All monic irreducible polynomials over F_q of degree 1..max_deg."""
    from .fields import field

    F = field(q)
    by_deg: dict[int, list] = {}
    for d in range(1, max_deg + 1):
        polys = []
        for tail in iproduct(range(q), repeat=d):
            f = tail + (1,)
            reducible = False
            for dd in range(1, d // 2 + 1):
                for g in by_deg.get(dd, ()):
                    if poly_divmod(F, f, g)[1] == (0,):
                        reducible = True
                        break
                if reducible:
                    break
            if not reducible:
                polys.append(f)
        by_deg[d] = polys
    return by_deg


def factor_monic(F: FiniteField, f):
    """Factor a monic polynomial into {irreducible: multiplicity}."""
    deg = len(f) - 1
    table = monic_irreducibles(F.q, deg)
    out: dict[tuple, int] = {}
    for d in range(1, deg + 1):
        for g in table[d]:
            while len(f) > 1:
                quot, rem = poly_divmod(F, f, g)
                if rem != (0,):
                    break
                out[g] = out.get(g, 0) + 1
                f = quot
            if len(f) == 1:
                break
        if len(f) == 1:
            break
    assert len(f) == 1, "factorization did not terminate"
    return out
