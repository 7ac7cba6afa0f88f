"""Univariate rational functions in t with integer coefficients.

Polynomials are plain tuples of coefficients in ascending degree.  Arithmetic
is done over ``Fraction`` and results are cleared back to primitive integer
form, so a ``RationalFunction`` has exactly one representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Poly = tuple  # ascending coefficients; () is the zero polynomial


def _trim(c: Sequence) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    return _trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def pneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def psub(a: Sequence, b: Sequence) -> tuple:
    return padd(a, pneg(b))


def pmul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def pscale(a: Sequence, k) -> tuple:
    return _trim(x * k for x in a)


def pderiv(a: Sequence) -> tuple:
    return _trim(i * a[i] for i in range(1, len(a)))


def pdivmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    """Euclidean division over Q."""
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in _trim(a)]
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        k = r[-1] / lead
        q[shift] = k
        for i, y in enumerate(b):
            r[shift + i] -= k * y
        r = list(_trim(r))
    return _trim(q), _trim(r)


def pgcd(a: Sequence, b: Sequence) -> tuple:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return ()
    lead = Fraction(a[-1])
    return tuple(Fraction(x) / lead for x in a)


def peval(a: Sequence, t):
    acc = 0
    for c in reversed(a):
        acc = acc * t + c
    return acc


def monomial(n: int, c=1) -> tuple:
    return (0,) * n + (c,)


def ppow(a: Sequence, n: int) -> tuple:
    out: tuple = (1,)
    for _ in range(n):
        out = pmul(out, a)
    return out


def _content_clear(num: Sequence, den: Sequence) -> tuple[tuple, tuple]:
    """Scale num/den by a common rational so both are integer and jointly primitive."""
    fr = [Fraction(x) for x in (*num, *den)]
    m = lcm(*(x.denominator for x in fr)) if fr else 1
    ints_num = [int(Fraction(x) * m) for x in num]
    ints_den = [int(Fraction(x) * m) for x in den]
    g = 0
    for x in (*ints_num, *ints_den):
        g = gcd(g, x)
    g = g or 1
    if ints_den[-1] < 0:
        g = -g
    return tuple(x // g for x in ints_num), tuple(x // g for x in ints_den)


@dataclass(frozen=True)
class RationalFunction:
    """num(t)/den(t) in lowest terms with integer coefficients.

    Construct through :meth:`make`; the dataclass constructor assumes its
    arguments are already canonical.
    """

    num: tuple
    den: tuple

    @classmethod
    def make(cls, num: Sequence, den: Sequence = (1,)) -> "RationalFunction":
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls((), (1,))
        g = pgcd(num, den)
        if len(g) > 1:
            num = pdivmod(num, g)[0]
            den = pdivmod(den, g)[0]
        n, d = _content_clear(num, den)
        return cls(n, d)

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        c = Fraction(c)
        return cls.make((c,), (1,))

    @classmethod
    def t(cls) -> "RationalFunction":
        return cls.make((0, 1))

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        other = _coerce(other)
        return RationalFunction.make(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return RationalFunction.make(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction.make(pmul(self.num, other.den), pmul(self.den, other.num))

    def __call__(self, t):
        d = peval(self.den, Fraction(t))
        if d == 0:
            raise ZeroDivisionError(f"pole at t={t}")
        return Fraction(peval(self.num, Fraction(t))) / d

    def substitute_power(self, n: int) -> "RationalFunction":
        """g(t) -> g(t^n) for n >= 1."""
        if n < 1:
            raise ValueError("n must be positive")

        def spread(c):
            out = [0] * ((len(c) - 1) * n + 1) if c else []
            for i, x in enumerate(c):
                out[i * n] = x
            return out

        return RationalFunction.make(spread(self.num), spread(self.den))

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFunction":
        return cls.make(obj["num"], obj["den"])

    def __str__(self) -> str:
        return f"({_pstr(self.num)})/({_pstr(self.den)})"


def _pstr(c: Sequence) -> str:
    if not c:
        return "0"
    parts = []
    for i, x in enumerate(c):
        if x == 0:
            continue
        mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        coef = str(x) if (i == 0 or abs(x) != 1) else ("-" if x < 0 else "")
        if mon and coef not in ("", "-"):
            coef += "*"
        parts.append(f"{coef}{mon}")
    return " + ".join(parts).replace("+ -", "- ")


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.constant(x)


def h_function(n: int = 1) -> RationalFunction:
    """(t^n + 1)/(t^n - 1); negative n gives h(t^n) = -h(t^|n|)."""
    if n == 0:
        raise ValueError("scale must be nonzero")
    m = abs(n)
    base = RationalFunction.make(padd(monomial(m), (1,)), psub(monomial(m), (1,)))
    return base if n > 0 else -base


def apply_D(g: RationalFunction, times: int = 1) -> RationalFunction:
    """Apply D g = t * dg/dt ``times`` times."""
    if times < 0:
        raise ValueError("times must be >= 0")
    for _ in range(times):
        num = pmul((0, 1), psub(pmul(pderiv(g.num), g.den), pmul(g.num, pderiv(g.den))))
        g = RationalFunction.make(num, pmul(g.den, g.den))
    return g


def alexander_torus(p: int, q: int) -> RationalFunction:
    """Alexander polynomial of the (p, q) torus knot, normalized so that Delta(1) = 1."""
    if p < 2 or abs(q) < 2:
        raise ValueError("need p >= 2 and |q| >= 2")
    if gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    q = abs(q)
    one = (1,)
    num = pmul(psub(monomial(p * q), one), psub(monomial(1), one))
    den = pmul(psub(monomial(p), one), psub(monomial(q), one))
    quo, rem = pdivmod(num, den)
    assert not rem
    return RationalFunction.make(quo)
