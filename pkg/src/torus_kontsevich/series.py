"""Truncated Laurent series with exact rational coefficients.

A series is known exactly for exponents ``<= order``; everything above is
unknown.  Every operation propagates that validity bound, so nested log/exp
computations cannot silently lose precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable

from .ratfunc import RationalFunction, alexander_torus

MAX_POLE_ORDER = 8


@dataclass(frozen=True)
class LaurentSeries:
    min_exp: int
    coeffs: tuple  # Fractions for exponents min_exp .. order
    order: int
    var: str = "x"

    @classmethod
    def make(cls, min_exp: int, coeffs: Iterable, order: int, var: str = "x") -> "LaurentSeries":
        cs = [Fraction(c) for c in coeffs]
        cs = cs[: max(order - min_exp + 1, 0)]
        cs += [Fraction(0)] * (order - min_exp + 1 - len(cs))
        while cs and cs[0] == 0:
            cs.pop(0)
            min_exp += 1
        if not cs:
            min_exp = order + 1
        return cls(min_exp, tuple(cs), order, var)

    @classmethod
    def zero(cls, order: int, var: str = "x") -> "LaurentSeries":
        return cls.make(0, (), order, var)

    @classmethod
    def from_dict(cls, terms: dict, order: int, var: str = "x") -> "LaurentSeries":
        if not terms:
            return cls.zero(order, var)
        lo = min(terms)
        return cls.make(lo, [terms.get(e, 0) for e in range(lo, order + 1)], order, var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, e: int) -> Fraction:
        if e > self.order:
            raise IndexError(f"coefficient of x^{e} beyond validity order {self.order}")
        if e < self.min_exp:
            return Fraction(0)
        return self.coeffs[e - self.min_exp]

    def terms(self) -> dict:
        return {self.min_exp + i: c for i, c in enumerate(self.coeffs) if c}

    def valuation(self) -> int:
        return self.min_exp

    def truncate(self, order: int) -> "LaurentSeries":
        if order > self.order:
            raise ValueError(f"cannot extend validity from {self.order} to {order}")
        return LaurentSeries.make(self.min_exp, self.coeffs, order, self.var)

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.make(0, (other,), self.order, self.var)
        order = min(self.order, other.order)
        lo = min(self.min_exp, other.min_exp)
        return LaurentSeries.make(
            lo, [self[e] + other[e] for e in range(lo, order + 1)], order, self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.min_exp, tuple(-c for c in self.coeffs), self.order, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            k = Fraction(other)
            return LaurentSeries.make(self.min_exp, [c * k for c in self.coeffs], self.order, self.var)
        a, b = self, other
        if a.is_zero() or b.is_zero():
            # a zero series still carries a validity order; x^(order+1) bounds its true valuation
            order = min(a.order + b.min_exp, b.order + a.min_exp)
            return LaurentSeries.zero(order, self.var)
        order = min(a.order + b.min_exp, b.order + a.min_exp)
        lo = a.min_exp + b.min_exp
        out = [Fraction(0)] * (order - lo + 1)
        for i, x in enumerate(a.coeffs):
            for j, y in enumerate(b.coeffs):
                k = i + j
                if k < len(out):
                    out[k] += x * y
        return LaurentSeries.make(lo, out, order, self.var)

    __rmul__ = __mul__

    def reciprocal(self) -> "LaurentSeries":
        if self.is_zero():
            raise ZeroDivisionError("series is zero to its validity order")
        v = self.min_exp
        n = self.order - v  # number of known terms beyond the leading one
        a = self.coeffs
        inv = [Fraction(1) / a[0]]
        for k in range(1, n + 1):
            s = sum(a[i] * inv[k - i] for i in range(1, k + 1))
            inv.append(-s / a[0])
        return LaurentSeries.make(-v, inv, self.order - 2 * v, self.var)

    def __truediv__(self, other):
        if not isinstance(other, LaurentSeries):
            return self * (Fraction(1) / Fraction(other))
        return self * other.reciprocal()

    def derivative(self) -> "LaurentSeries":
        return LaurentSeries.make(
            self.min_exp - 1,
            [(self.min_exp + i) * c for i, c in enumerate(self.coeffs)],
            self.order - 1,
            self.var,
        )

    def scale_variable(self, n) -> "LaurentSeries":
        """x -> n x."""
        n = Fraction(n)
        return LaurentSeries.make(
            self.min_exp,
            [c * n ** (self.min_exp + i) for i, c in enumerate(self.coeffs)],
            self.order,
            self.var,
        )

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by x^k."""
        return LaurentSeries.make(self.min_exp + k, self.coeffs, self.order + k, self.var)

    def log(self) -> "LaurentSeries":
        """log of a series with constant term 1."""
        if self.min_exp < 0 or self[0] != 1:
            raise ValueError("log needs a power series with constant term 1")
        # g = log f satisfies f g' = f'
        n = self.order
        f = [self[e] for e in range(n + 1)]
        g = [Fraction(0)] * (n + 1)
        for k in range(1, n + 1):
            s = k * f[k] - sum(j * g[j] * f[k - j] for j in range(1, k))
            g[k] = s / k
        return LaurentSeries.make(0, g, n, self.var)

    def exp(self) -> "LaurentSeries":
        """exp of a power series without constant term."""
        if self.min_exp < 1:
            raise ValueError("exp needs a power series with zero constant term")
        n = self.order
        a = [self[e] for e in range(n + 1)]
        e_ = [Fraction(1)] + [Fraction(0)] * n
        for k in range(1, n + 1):
            e_[k] = sum(j * a[j] * e_[k - j] for j in range(1, k + 1)) / k
        return LaurentSeries.make(0, e_, n, self.var)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.min_exp, other.min_exp)
        return all(self[e] == other[e] for e in range(lo, order + 1))

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "min_exp": self.min_exp,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
            "order": self.order,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentSeries":
        return cls.make(
            obj["min_exp"], [Fraction(c) for c in obj["coeffs"]], obj["order"], obj["var"]
        )

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms().items():
            parts.append(f"{c}" if e == 0 else f"{c}*{self.var}^{e}")
        body = " + ".join(parts) or "0"
        return f"{body} + O({self.var}^{self.order + 1})"


def exp_series(n: int, order: int, scale=1) -> LaurentSeries:
    """Taylor series of exp(scale * x)."""
    scale = Fraction(scale)
    return LaurentSeries.make(
        0, [scale**k / factorial(k) for k in range(order + 1)], order
    )


def sinhc_half(order: int) -> LaurentSeries:
    """sinh(x/2)/(x/2) as a power series."""
    cs = [Fraction(0)] * (order + 1)
    for k in range(0, order // 2 + 1):
        cs[2 * k] = Fraction(1, 2 ** (2 * k) * factorial(2 * k + 1))
    return LaurentSeries.make(0, cs, order)


def series_f(n: int, order: int) -> LaurentSeries:
    """Taylor series of f(n x) where f(x) = 1/2 log(sinh(x/2)/(x/2))."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return (sinhc_half(order).log() * Fraction(1, 2)).scale_variable(n)


def laurent_of_poly_at_exp(coeffs, order: int, shift: int = 0) -> LaurentSeries:
    """Expand sum_i c_i e^{(i + shift) x} to the given order."""
    cs = []
    for k in range(order + 1):
        s = sum(Fraction(c) * (i + shift) ** k for i, c in enumerate(coeffs) if c)
        cs.append(s / factorial(k))
    return LaurentSeries.make(0, cs, order)


def _multiplicity_at_one(poly) -> int:
    from .ratfunc import pdivmod

    m, cur = 0, tuple(poly)
    while cur:
        q, r = pdivmod(cur, (-1, 1))
        if r:
            break
        m, cur = m + 1, q
    return m


def hair_expand(g: RationalFunction, order: int, max_pole: int = MAX_POLE_ORDER) -> LaurentSeries:
    """Laurent expansion of g(e^x) around x = 0, valid through x^order."""
    if g.is_zero():
        return LaurentSeries.zero(order)
    pole = _multiplicity_at_one(g.den)
    if pole > max_pole:
        raise ValueError(f"pole of order {pole} at t=1 exceeds bound {max_pole}")
    num = laurent_of_poly_at_exp(g.num, order + pole)
    den = laurent_of_poly_at_exp(g.den, order + 2 * pole)
    return (num / den).truncate(order)


def wh_series(p: int, q: int, order: int) -> LaurentSeries:
    """-1/2 log Delta_{p,q}(e^x) with Delta symmetrized by t^{-deg/2}."""
    delta = alexander_torus(p, q)
    d = len(delta.num) - 1
    assert delta.den == (1,) and d % 2 == 0
    sym = laurent_of_poly_at_exp(delta.num, order, shift=-d // 2)
    return sym.log() * Fraction(-1, 2)
