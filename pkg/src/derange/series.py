"""Exact truncated power series over the rationals.

Everything here is a polynomial in one variable u, truncated at a fixed
order N: coefficients are `fractions.Fraction` and all arithmetic is exact.
`DualSeries` carries a first-order jet in a second marker variable t
(value at t = 1 together with d/dt at t = 1), which is what is needed to
extract mean values from bivariate generating functions without ever
storing a genuinely bivariate series.

The `euler_factor` helpers expand infinite products of the shape

    prod_{i >= 1} (1 - x / Q^i)^(+-1),   x = c * u^m,

through the classical closed forms

    prod (1 - x/Q^i)      = sum_n (-x)^n / ((Q^n - 1) ... (Q - 1)),
    prod (1 - x/Q^i)^(-1) = sum_n x^n Q^(n(n-1)/2) / ((Q^n - 1) ... (Q - 1)).

Truncating the product over i factor-by-factor would be wrong -- every
factor touches every coefficient -- so these sums are the only route used.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def default_order() -> int:
    """Truncation order used when none is given (env DERANGE_ORDER, else 64)."""
    try:
        return max(1, int(os.environ.get("DERANGE_ORDER", "64")))
    except ValueError:
        return 64


class TruncatedSeries:
    """A power series modulo u^(order+1), with exact rational coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1 if cs else 0
        if len(cs) < order + 1:
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        else:
            cs = cs[: order + 1]
        self.coeffs = cs
        self.order = order

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, c: Scalar, m: int, order: int) -> "TruncatedSeries":
        cs = [Fraction(0)] * (order + 1)
        if 0 <= m <= order:
            cs[m] = Fraction(c)
        return cls(cs, order)

    @classmethod
    def geometric(cls, c: Scalar, m: int, order: int) -> "TruncatedSeries":
        """(1 - c*u^m)^(-1)."""
        if m <= 0:
            raise ValueError("geometric needs m >= 1")
        cs = [Fraction(0)] * (order + 1)
        term = Fraction(1)
        k = 0
        while k <= order:
            cs[k] = term
            term *= Fraction(c)
            k += m
        return cls(cs, order)

    # -- basics ------------------------------------------------------------

    def coefficient(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"TruncatedSeries([{head}{tail}], order={self.order})"

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} != {other.order}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            cs = list(self.coeffs)
            cs[0] += other
            return TruncatedSeries(cs, self.order)
        self._check(other)
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return TruncatedSeries([a * c for a in self.coeffs], self.order)
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(0, n + 1 - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = self.order
        inv0 = 1 / self.coeffs[0]
        out = [Fraction(0)] * (n + 1)
        out[0] = inv0
        for k in range(1, n + 1):
            s = Fraction(0)
            for j in range(1, k + 1):
                fj = self.coeffs[j]
                if fj:
                    s += fj * out[k - j]
            out[k] = -inv0 * s
        return TruncatedSeries(out, n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def pow_rational(self, e: Scalar) -> "TruncatedSeries":
        """f^e for rational e; requires constant term exactly 1.

        Uses the recurrence n*g_n = sum_{k=1..n} ((e+1)k - n) f_k g_{n-k}.
        """
        e = Fraction(e)
        if self.coeffs[0] != 1:
            raise ValueError("pow_rational requires constant term 1")
        n = self.order
        f = self.coeffs
        g = [Fraction(0)] * (n + 1)
        g[0] = Fraction(1)
        for m in range(1, n + 1):
            s = Fraction(0)
            for k in range(1, m + 1):
                fk = f[k]
                if fk:
                    s += ((e + 1) * k - m) * fk * g[m - k]
            g[m] = s / m
        return TruncatedSeries(g, n)

    def __pow__(self, e):
        if isinstance(e, int) and self.coeffs[0] != 1:
            if e < 0:
                return self.inverse() ** (-e)
            result = TruncatedSeries.one(self.order)
            base = self
            while e:
                if e & 1:
                    result = result * base
                base = base * base
                e >>= 1
            return result
        return self.pow_rational(e)

    def exp(self) -> "TruncatedSeries":
        """exp(f); requires constant term 0."""
        if self.coeffs[0] != 0:
            raise ValueError("exp requires constant term 0")
        n = self.order
        f = self.coeffs
        g = [Fraction(0)] * (n + 1)
        g[0] = Fraction(1)
        for m in range(1, n + 1):
            s = Fraction(0)
            for k in range(1, m + 1):
                fk = f[k]
                if fk:
                    s += k * fk * g[m - k]
            g[m] = s / m
        return TruncatedSeries(g, n)


def product(factors: Sequence[TruncatedSeries], order: int) -> TruncatedSeries:
    out = TruncatedSeries.one(order)
    for f in factors:
        out = out * f
    return out


# -- Euler product expansions ---------------------------------------------


def euler_factor(
    order: int, m: int, c: Scalar, Q: Scalar, inverse: bool = False
) -> TruncatedSeries:
    """prod_{i>=1} (1 - x/Q^i)^(-1 if inverse else 1), x = c*u^m."""
    if m <= 0:
        raise ValueError("euler_factor needs m >= 1")
    Q = Fraction(Q)
    c = Fraction(c)
    cs = [Fraction(0)] * (order + 1)
    cs[0] = Fraction(1)
    denom = Fraction(1)  # (Q^n - 1) ... (Q - 1)
    xpow = Fraction(1)
    n = 1
    while n * m <= order:
        denom *= Q**n - 1
        xpow *= c
        if inverse:
            cs[n * m] = xpow * Q ** (n * (n - 1) // 2) / denom
        else:
            cs[n * m] = (-1) ** n * xpow / denom
        n += 1
    return TruncatedSeries(cs, order)


def alternating_factor(
    order: int, m: int, c: Scalar, b: Scalar, inverse: bool = False
) -> TruncatedSeries:
    """prod_{i>=1} (1 + (-1)^i x / b^i)^(+-1), x = c*u^m.

    Split over even and odd i: the even part is prod_j (1 + x/(b^2)^j) and the
    odd part is prod_j (1 - (x*b)/(b^2)^j).
    """
    b = Fraction(b)
    even = euler_factor(order, m, -Fraction(c), b * b)
    odd = euler_factor(order, m, Fraction(c) * b, b * b)
    out = even * odd
    return out.inverse() if inverse else out


# -- first-order jets in a marker variable t --------------------------------


class DualSeries:
    """Pair (value, d/dt) of a series in u that also depends on a marker t.

    `value` is the series at t = 1 and `der` is its t-derivative at t = 1;
    products and powers follow the product and chain rules.
    """

    __slots__ = ("value", "der")

    def __init__(self, value: TruncatedSeries, der: TruncatedSeries):
        if value.order != der.order:
            raise ValueError("order mismatch in DualSeries")
        self.value = value
        self.der = der

    @classmethod
    def constant(cls, s: TruncatedSeries) -> "DualSeries":
        return cls(s, TruncatedSeries.zero(s.order))

    @property
    def order(self) -> int:
        return self.value.order

    def __add__(self, other):
        if isinstance(other, (int, Fraction, TruncatedSeries)):
            return DualSeries(self.value + other, self.der)
        return DualSeries(self.value + other.value, self.der + other.der)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, TruncatedSeries)):
            return DualSeries(self.value - other, self.der)
        return DualSeries(self.value - other.value, self.der - other.der)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DualSeries(self.value * other, self.der * other)
        return DualSeries(
            self.value * other.value,
            self.der * other.value + self.value * other.der,
        )

    __rmul__ = __mul__

    def inverse(self) -> "DualSeries":
        vinv = self.value.inverse()
        return DualSeries(vinv, -(self.der * vinv * vinv))

    def pow_rational(self, e: Scalar) -> "DualSeries":
        """(v, w) -> (v^e, e v^(e-1) w); needs v to have constant term 1."""
        e = Fraction(e)
        p = self.value.pow_rational(e)
        return DualSeries(p, e * p * self.value.inverse() * self.der)


def dual_euler_factor(
    order: int, m: int, c: Scalar, Q: Scalar, inverse: bool = False
) -> DualSeries:
    """Like euler_factor with x = c*(u*t)^m: term n carries t^(m*n)."""
    base = euler_factor(order, m, c, Q, inverse)
    der = [Fraction(0)] * (order + 1)
    n = 1
    while n * m <= order:
        der[n * m] = n * m * base.coeffs[n * m]
        n += 1
    return DualSeries(base, TruncatedSeries(der, order))


def dual_alternating_factor(
    order: int, m: int, c: Scalar, b: Scalar, inverse: bool = False
) -> DualSeries:
    """Like alternating_factor with x = c*(u*t)^m."""
    b = Fraction(b)
    even = dual_euler_factor(order, m, -Fraction(c), b * b)
    odd = dual_euler_factor(order, m, Fraction(c) * b, b * b)
    out = even * odd
    return out.inverse() if inverse else out
