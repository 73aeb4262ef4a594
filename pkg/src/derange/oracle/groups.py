"""Enumeration of small classical groups, element by element.

Linear families are enumerated by scanning all matrices; the isometry
groups (unitary, symplectic, orthogonal) build matrices column by column,
solving the linear part of the form constraints exactly and filtering the
quadratic part, so only genuine candidates are visited. Every enumeration
is checked against the standard order formula by the callers/tests.

Families: gl, sl, u, su, sp, o+, o-, so+, so-, o, so (odd dimension),
omega+, omega- (even characteristic only, via the quasideterminant).
Unitary groups of "U(n,q)" live over F_{q^2}.
"""

from __future__ import annotations

from itertools import product as iproduct

from ..polycount import prime_power_info
from .fields import FiniteField, field
from .linalg import det, identity, kernel_dim, rref

GUARD = 10**7

_LINEAR = ("gl", "sl")
_UNITARY = ("u", "su")
_ORTHO_EVEN = ("o+", "o-", "so+", "so-", "omega+", "omega-")
_ORTHO_ODD = ("o", "so")


class GroupKey(tuple):
    """(family, n, q): n is the matrix dimension, q the defining field size
    (for unitary families the matrices live over F_{q^2})."""

    def __new__(cls, family: str, n: int, q: int):
        return super().__new__(cls, (family, n, q))

    @property
    def family(self):
        return self[0]

    @property
    def n(self):
        return self[1]

    @property
    def q(self):
        return self[2]


def matrix_field(key: GroupKey) -> FiniteField:
    return field(key.q**2 if key.family in _UNITARY else key.q)


def group_order(key: GroupKey) -> int:
    fam, n, q = key
    if fam in _LINEAR:
        order = 1
        for i in range(n):
            order *= q**n - q**i
        return order // (q - 1) if fam == "sl" else order
    if fam in _UNITARY:
        order = q ** (n * (n - 1) // 2)
        for i in range(1, n + 1):
            order *= q**i - (-1) ** i
        return order // (q + 1) if fam == "su" else order
    if fam == "sp":
        m = n // 2
        order = q ** (m * m)
        for i in range(1, m + 1):
            order *= q ** (2 * i) - 1
        return order
    if fam in _ORTHO_ODD:
        m = n // 2
        order = 2 * q ** (m * m)
        for i in range(1, m + 1):
            order *= q ** (2 * i) - 1
        return order // 2 if fam == "so" else order
    if fam in _ORTHO_EVEN:
        m = n // 2
        eps = 1 if fam.endswith("+") else -1
        order = 2 * q ** (m * (m - 1)) * (q**m - eps)
        for i in range(1, m):
            order *= q ** (2 * i) - 1
        # so/omega sit at index 2 in the full orthogonal group
        return order if fam in ("o+", "o-") else order // 2
    raise ValueError(f"unknown family {key.family!r}")


# -- forms ------------------------------------------------------------------


def symplectic_gram(F: FiniteField, n: int):
    """Block-diagonal pairs (e_1,f_1),(e_2,f_2),..."""
    if n % 2:
        raise ValueError("symplectic dimension must be even")
    J = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        J[i][i + 1] = 1
        J[i + 1][i] = F.neg[1]
    return tuple(tuple(r) for r in J)


def _anisotropic_pair(F: FiniteField):
    """Coefficients (a,b,c) with a x^2 + b xy + c y^2 = 0 only at (0,0)."""
    for b in range(F.q):
        for c in range(1, F.q):
            if all(
                F.add[F.add[F.mul[x][x]][F.mul[b][F.mul[x][y]]]][
                    F.mul[c][F.mul[y][y]]
                ]
                != 0
                for x in range(F.q)
                for y in range(F.q)
                if (x, y) != (0, 0)
            ):
                return (1, b, c)
    raise ValueError("no anisotropic binary form found")


def quadratic_form(F: FiniteField, n: int, eps: int):
    """Coefficient matrix C (upper triangular) of Q(x) = sum C_ij x_i x_j.

    Plus type: hyperbolic pairs x_1x_2 + x_3x_4 + ...; minus type replaces
    the last pair by an anisotropic binary form; odd dimension appends a
    square term to hyperbolic pairs.
    """
    C = [[0] * n for _ in range(n)]
    pairs = n // 2
    for i in range(0, 2 * pairs, 2):
        C[i][i + 1] = 1
    if n % 2:
        if eps != 0:
            raise ValueError("odd-dimensional forms carry no type sign")
        C[n - 1][n - 1] = 1
    elif eps == -1:
        a, b, c = _anisotropic_pair(F)
        C[n - 2][n - 1] = b
        C[n - 2][n - 2] = a
        C[n - 1][n - 1] = c
    elif eps != 1:
        raise ValueError("even-dimensional forms need a type sign")
    return tuple(tuple(r) for r in C)


def eval_quadratic(F: FiniteField, C, v) -> int:
    s = 0
    for i in range(len(v)):
        if v[i]:
            for j in range(i, len(v)):
                if v[j] and C[i][j]:
                    s = F.add[s][F.mul[C[i][j]][F.mul[v[i]][v[j]]]]
    return s


def polar_bilinear(F: FiniteField, C, u, v) -> int:
    """B(u,v) = Q(u+v) - Q(u) - Q(v)."""
    s = 0
    for i in range(len(u)):
        for j in range(i, len(u)):
            if C[i][j]:
                t = F.add[F.mul[u[i]][v[j]]][F.mul[u[j]][v[i]]]
                s = F.add[s][F.mul[C[i][j]][t]]
    return s


def gram_bilinear(F: FiniteField, G, u, v) -> int:
    s = 0
    for i in range(len(u)):
        if u[i]:
            for j in range(len(v)):
                if v[j] and G[i][j]:
                    s = F.add[s][F.mul[u[i]][F.mul[G[i][j]][v[j]]]]
    return s


def hermitian_inner(F: FiniteField, u, v) -> int:
    """h(u, v) = sum u_t conj(v_t) (identity Gram matrix)."""
    s = 0
    for a, b in zip(u, v):
        s = F.add[s][F.mul[a][F.conj[b]]]
    return s


def form_for(key: GroupKey):
    """(field, tag, data) where tag in {"none","symplectic","hermitian",
    "quadratic"} and data is the Gram/coefficient matrix."""
    fam, n, q = key
    F = matrix_field(key)
    if fam in _LINEAR:
        return F, "none", None
    if fam in _UNITARY:
        return F, "hermitian", None
    if fam == "sp":
        return F, "symplectic", symplectic_gram(F, n)
    if fam in _ORTHO_ODD:
        if q % 2 == 0:
            raise ValueError("odd-dimensional orthogonal groups need odd q here")
        return F, "quadratic", quadratic_form(F, n, 0)
    if fam in _ORTHO_EVEN:
        eps = 1 if fam.endswith("+") else -1
        return F, "quadratic", quadratic_form(F, n, eps)
    raise ValueError(f"unknown family {fam!r}")


# -- enumeration ------------------------------------------------------------


def _affine_solutions(F: FiniteField, rows, rhs, n):
    """All v with row . v = rhs entry-wise; yields every solution."""
    if not rows:
        yield from iproduct(F.elements, repeat=n)
        return
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, pivots = rref(F, aug)
    if n in pivots:
        return  # inconsistent
    free = [c for c in range(n) if c not in pivots]
    for vals in iproduct(F.elements, repeat=len(free)):
        v = [0] * n
        for c, x in zip(free, vals):
            v[c] = x
        for row, pc in zip(red, pivots):
            s = row[n]
            for c, x in zip(free, vals):
                if x and row[c]:
                    s = F.add[s][F.neg[F.mul[row[c]][x]]]
            v[pc] = s
        yield tuple(v)


def _isometry_columns(key: GroupKey):
    """Yield each isometry as a tuple of column vectors."""
    F, tag, data = form_for(key)
    n = key.n
    basis = identity(F, n)

    def lin_row(ci, j):
        # coefficient vector w with w . c_j = required value
        if tag == "symplectic":
            return tuple(
                gram_bilinear(F, data, ci, basis[t]) for t in range(n)
            )
        if tag == "hermitian":
            return tuple(F.conj[x] for x in ci)
        return tuple(polar_bilinear(F, data, ci, basis[t]) for t in range(n))

    def target(i, j):
        if tag == "symplectic":
            return gram_bilinear(F, data, basis[i], basis[j])
        if tag == "hermitian":
            return 1 if i == j else 0
        return polar_bilinear(F, data, basis[i], basis[j])

    def quad_ok(v, j):
        if tag == "hermitian":
            return hermitian_inner(F, v, v) == 1
        if tag == "quadratic":
            return eval_quadratic(F, data, v) == eval_quadratic(F, data, basis[j])
        return True

    def rec(cols):
        j = len(cols)
        if j == n:
            yield tuple(cols)
            return
        rows = [lin_row(ci, j) for ci in cols]
        rhs = [target(i, j) for i in range(j)]
        for v in _affine_solutions(F, rows, rhs, n):
            if quad_ok(v, j):
                cols.append(v)
                yield from rec(cols)
                cols.pop()

    yield from rec([])


def enumerate_group(key: GroupKey):
    """Yield each group element (tuple of row tuples) exactly once."""
    fam, n, q = key
    prime_power_info(q)
    order = group_order(key)
    if order > GUARD:
        raise ResourceWarning(f"group order {order} exceeds guard {GUARD}")
    F = matrix_field(key)
    if fam in _LINEAR:
        one = 1
        for entries in iproduct(F.elements, repeat=n * n):
            M = tuple(entries[i * n : (i + 1) * n] for i in range(n))
            d = det(F, M)
            if d == 0 or (fam == "sl" and d != one):
                continue
            yield M
        return
    if fam in ("omega+", "omega-") and q % 2:
        raise ValueError("odd-characteristic omega needs a spinor norm; unsupported")
    ident = identity(F, n)
    for cols in _isometry_columns(key):
        M = tuple(tuple(col[i] for col in cols) for i in range(n))
        if fam in ("su", "so", "so+", "so-") and det(F, M) != 1:
            continue
        if fam in ("omega+", "omega-"):
            diff = tuple(
                tuple(F.sub(M[i][j], ident[i][j]) for j in range(n)) for i in range(n)
            )
            if kernel_dim(F, diff) % 2:
                continue
        yield M


def group_elements(key: GroupKey):
    """Materialized, order-checked element list."""
    elems = list(enumerate_group(key))
    expected = group_order(key)
    if len(elems) != expected:
        raise AssertionError(
            f"enumerated {len(elems)} elements of {tuple(key)}, expected {expected}"
        )
    return elems


# -- feasible set -----------------------------------------------------------

FEASIBLE: tuple[GroupKey, ...] = tuple(
    GroupKey(fam, n, q)
    for fam, n, q in [
        *[("gl", n, 2) for n in (1, 2, 3, 4)],
        *[("sl", n, 2) for n in (2, 3, 4)],
        *[("gl", n, 3) for n in (1, 2, 3)],
        *[("sl", n, 3) for n in (2, 3)],
        ("gl", 2, 4),
        ("sl", 2, 4),
        ("gl", 2, 5),
        ("sl", 2, 5),
        *[("u", n, 2) for n in (1, 2, 3)],
        *[("su", n, 2) for n in (2, 3)],
        ("u", 2, 3),
        ("su", 2, 3),
        ("sp", 2, 2),
        ("sp", 2, 3),
        ("sp", 2, 5),
        ("sp", 4, 2),
        ("sp", 4, 3),
        *[("o+", 2, q) for q in (2, 3, 4, 5)],
        *[("o-", 2, q) for q in (2, 3, 4, 5)],
        ("o+", 4, 2),
        ("o-", 4, 2),
        ("omega+", 2, 2),
        ("omega-", 2, 2),
        ("omega+", 2, 4),
        ("omega-", 2, 4),
        ("omega+", 4, 2),
        ("omega-", 4, 2),
        *[("so+", 2, q) for q in (3, 5)],
        *[("so-", 2, q) for q in (3, 5)],
        ("so+", 4, 3),
        ("so-", 4, 3),
        ("o", 3, 3),
        ("so", 3, 3),
    ]
)


def feasible_groups() -> tuple[GroupKey, ...]:
    return FEASIBLE
