"""Brute-force statistics over the enumerated groups.

All proportions come back as exact Fractions: counts over the group order,
with the group materialized once per key and characteristic polynomials
factored through a shared cache. Subspace actions are tested honestly:
a matrix fixes a subspace iff it maps every basis vector back into it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product as iproduct

import numpy as np

from .fields import field
from .groups import (
    GroupKey,
    form_for,
    eval_quadratic,
    gram_bilinear,
    group_elements,
    hermitian_inner,
    matrix_field,
    polar_bilinear,
)
from .linalg import char_poly, factor_monic, identity, kernel_dim, mat_vec, rref

_SQUAREFREE_FAMILIES = ("gl", "sl", "u", "su", "sp")


@dataclass(frozen=True)
class SubspaceKind:
    """A k-dimensional subspace action.

    kind: "any", "nondegenerate", or "totally-singular".
    space_type: "+" or "-" to restrict nondegenerate orthogonal 2-spaces
    by the number of singular vectors they contain; None for no restriction.
    """

    k: int
    kind: str = "any"
    space_type: str | None = None


@lru_cache(maxsize=None)
def _elements(key: GroupKey):
    return tuple(group_elements(key))


@lru_cache(maxsize=None)
def _char_polys(key: GroupKey):
    F = matrix_field(key)
    return tuple(char_poly(F, M) for M in _elements(key))


@lru_cache(maxsize=None)
def _factor(q: int, f: tuple):
    return factor_monic(field(q), f)


def factor_profile(key: GroupKey, M):
    """Irreducible factorization {poly: multiplicity} of the char poly."""
    F = matrix_field(key)
    return _factor(F.q, char_poly(F, M))


def _z_minus_one(F):
    return (F.neg[1], 1)


def _z_plus_one(F):
    return (1, 1)


def _is_rs_profile(key: GroupKey, M, profile) -> bool:
    fam = key.family
    F = matrix_field(key)
    if fam in _SQUAREFREE_FAMILIES:
        return all(m == 1 for m in profile.values())
    # orthogonal convention: z -+ 1 may occur with multiplicity two, but
    # then the corresponding eigenspace must fill the whole generalized block
    special = {_z_minus_one(F), _z_plus_one(F)}
    n = key.n
    for f, m in profile.items():
        if f not in special:
            if m != 1:
                return False
            continue
        if m > 2:
            return False
        if m == 2:
            root = F.neg[f[0]]
            shifted = tuple(
                tuple(F.sub(M[i][j], root if i == j else 0) for j in range(n))
                for i in range(n)
            )
            if kernel_dim(F, shifted) != 2:
                return False
    return True


def is_rs(key: GroupKey, M) -> bool:
    """Regular semisimple in the sense matching the family's cycle index."""
    return _is_rs_profile(key, M, factor_profile(key, M))


def is_strongly_rs(key: GroupKey, M) -> bool:
    """Squarefree characteristic polynomial, every family."""
    return all(m == 1 for m in factor_profile(key, M).values())


def is_eigenvalue_free(key: GroupKey, M) -> bool:
    """No eigenvalue in the field the matrix is written over."""
    return all(len(f) > 2 for f in factor_profile(key, M))


def _D_value(key: GroupKey, profile) -> int:
    F = matrix_field(key)
    fam = key.family
    special = {_z_minus_one(F), _z_plus_one(F)}
    total = 0
    for f, m in profile.items():
        deg = len(f) - 1
        if m >= 2:
            total += deg * m
        elif fam not in _SQUAREFREE_FAMILIES and f in special:
            total += deg * m
    return total


@lru_cache(maxsize=None)
def _rs_flags(key: GroupKey):
    elems = _elements(key)
    polys = _char_polys(key)
    q = matrix_field(key).q
    return tuple(
        _is_rs_profile(key, M, _factor(q, f)) for M, f in zip(elems, polys)
    )


def rs_proportion(key: GroupKey) -> Fraction:
    flags = _rs_flags(key)
    return Fraction(sum(flags), len(flags))


def strongly_rs_proportion(key: GroupKey) -> Fraction:
    q = matrix_field(key).q
    polys = _char_polys(key)
    hits = sum(
        1 for f in polys if all(m == 1 for m in _factor(q, f).values())
    )
    return Fraction(hits, len(polys))


def eigenvalue_free_proportion(key: GroupKey) -> Fraction:
    q = matrix_field(key).q
    polys = _char_polys(key)
    hits = sum(1 for f in polys if all(len(g) > 2 for g in _factor(q, f)))
    return Fraction(hits, len(polys))


def mean_D_bruteforce(key: GroupKey) -> Fraction:
    q = matrix_field(key).q
    polys = _char_polys(key)
    total = sum(_D_value(key, _factor(q, f)) for f in polys)
    return Fraction(total, len(polys))


# -- subspaces --------------------------------------------------------------


def _echelon_bases(F, n: int, k: int):
    """One reduced-echelon basis per k-dimensional subspace of F^n."""
    for pivots in combinations(range(n), k):
        free = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, n)
            if c not in pivots
        ]
        for vals in iproduct(F.elements, repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r in range(k):
                rows[r][pivots[r]] = 1
            for (r, c), x in zip(free, vals):
                rows[r][c] = x
            yield tuple(tuple(r) for r in rows)


def _annihilator(F, basis, n: int):
    """Rows w with w . v = 0 for every v in the span."""
    red, pivots = rref(F, basis)
    out = []
    for c in range(n):
        if c in pivots:
            continue
        w = [0] * n
        w[c] = 1
        for row, pc in zip(red, pivots):
            w[pc] = F.neg[row[c]]
        out.append(tuple(w))
    return tuple(out)


def _span(F, basis, n: int):
    vecs = set()
    for coeffs in iproduct(F.elements, repeat=len(basis)):
        v = [0] * n
        for c, b in zip(coeffs, basis):
            if c:
                for t in range(n):
                    v[t] = F.add[v[t]][F.mul[c][b[t]]]
        vecs.add(tuple(v))
    return vecs


def _matches_kind(key: GroupKey, basis, skind: SubspaceKind) -> bool:
    F, tag, data = form_for(key)
    n = key.n
    k = skind.k
    if skind.kind == "any":
        return True
    if tag == "none":
        raise ValueError("linear groups only support kind 'any'")

    def pair(u, v):
        if tag == "symplectic":
            return gram_bilinear(F, data, u, v)
        if tag == "hermitian":
            return hermitian_inner(F, u, v)
        return polar_bilinear(F, data, u, v)

    if skind.kind == "totally-singular":
        for i in range(k):
            for j in range(i, k):
                if pair(basis[i], basis[j]) != 0:
                    return False
        if tag == "quadratic":
            for b in basis:
                if eval_quadratic(F, data, b) != 0:
                    return False
        return True
    if skind.kind == "nondegenerate":
        gram = [[pair(bi, bj) for bj in basis] for bi in basis]
        from .linalg import det as _det

        if tag == "quadratic" and F.p == 2 and k % 2:
            raise ValueError("odd-dimensional quadratic spaces degenerate in char 2")
        if _det(F, tuple(tuple(r) for r in gram)) == 0:
            return False
        if skind.space_type is not None:
            if tag != "quadratic" or k != 2:
                raise ValueError("space types apply to quadratic 2-spaces")
            singular = sum(
                1
                for v in _span(F, basis, n)
                if v != (0,) * n and eval_quadratic(F, data, v) == 0
            )
            want = 2 * (F.q - 1) if skind.space_type == "+" else 0
            if singular != want:
                return False
        return True
    raise ValueError(f"unknown subspace kind {skind.kind!r}")


@lru_cache(maxsize=None)
def enumerate_subspaces(key: GroupKey, skind: SubspaceKind):
    """All subspaces of the given kind, as (echelon basis, annihilator)."""
    F = matrix_field(key)
    n = key.n
    out = []
    for basis in _echelon_bases(F, n, skind.k):
        if _matches_kind(key, basis, skind):
            out.append((basis, _annihilator(F, basis, n)))
    return tuple(out)


def _fixes(F, M, basis, ann) -> bool:
    for b in basis:
        image = mat_vec(F, M, b)
        for w in ann:
            s = 0
            for a, x in zip(w, image):
                s = F.add[s][F.mul[a][x]]
            if s != 0:
                return False
    return True


@lru_cache(maxsize=None)
def _fixing_mask(key: GroupKey, skind: SubspaceKind):
    """Boolean per element: fixes at least one subspace of the kind."""
    F = matrix_field(key)
    elems = _elements(key)
    subs = enumerate_subspaces(key, skind)
    if not subs:
        raise ValueError(f"no subspaces of kind {skind} for {tuple(key)}")
    if F.degree == 1 and len(elems) * len(subs) > 200_000:
        G = np.array(elems, dtype=np.uint8)
        p = F.p
        mask = np.zeros(len(elems), dtype=bool)
        for basis, ann in subs:
            B = np.array(basis, dtype=np.uint8).T
            A = np.array(ann, dtype=np.uint8)
            GB = (G @ B) % p
            T = (A @ GB) % p
            mask |= ~T.any(axis=(1, 2))
        return tuple(bool(x) for x in mask)
    return tuple(
        any(_fixes(F, M, basis, ann) for basis, ann in subs) for M in elems
    )


def derangement_proportion(key: GroupKey, skind: SubspaceKind) -> Fraction:
    """Proportion fixing no subspace of the given kind."""
    mask = _fixing_mask(key, skind)
    return Fraction(sum(1 for x in mask if not x), len(mask))


def rs_and_fixing_proportion(key: GroupKey, skind: SubspaceKind) -> Fraction:
    mask = _fixing_mask(key, skind)
    flags = _rs_flags(key)
    hits = sum(1 for fixed, rs in zip(mask, flags) if fixed and rs)
    return Fraction(hits, len(mask))


# -- conjugacy classes ------------------------------------------------------


def _inverse(F, M):
    n = len(M)
    aug = [tuple(M[i]) + identity(F, n)[i] for i in range(n)]
    red, pivots = rref(F, aug)
    if pivots != list(range(n)):
        raise ValueError("matrix not invertible")
    return tuple(row[n:] for row in red)


def class_count_rs(key: GroupKey) -> int:
    """Number of conjugacy classes consisting of rs elements."""
    elems = _elements(key)
    flags = _rs_flags(key)
    F = matrix_field(key)
    from .linalg import mat_mul

    inverses = None
    remaining = {M for M, rs in zip(elems, flags) if rs}
    count = 0
    while remaining:
        x = next(iter(remaining))
        if inverses is None:
            inverses = [_inverse(F, g) for g in elems]
        orbit = {
            mat_mul(F, mat_mul(F, g, x), ginv)
            for g, ginv in zip(elems, inverses)
        }
        remaining -= orbit
        count += 1
    return count
