"""The lift_r operator on circle decorations and the Euler-characteristic rescaling Pi_r."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .ratfunc import RationalFunction, apply_D, h_function
from .recursion import DecoratedTree, vertex_prefactor
from .series import LaurentSeries


@dataclass(frozen=True)
class LiftContext:
    r: int
    series_depth: int = 40

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("r must be >= 2")


def taylor_at_zero(g: RationalFunction, depth: int) -> LaurentSeries:
    """Power series of g at t = 0 by the linear recurrence of its denominator."""
    if not g.den or g.den[0] == 0:
        raise ValueError("rational function has a pole at t = 0")
    d0 = Fraction(g.den[0])
    sparse = [(j, c) for j, c in enumerate(g.den) if j and c]
    out: list[Fraction] = []
    for k in range(depth + 1):
        acc = Fraction(g.num[k]) if k < len(g.num) else Fraction(0)
        for j, c in sparse:
            if j > k:
                break
            acc -= c * out[k - j]
        out.append(acc / d0)
    return LaurentSeries.make(0, out, depth, "t")


def lift_r_series(g: RationalFunction, ctx: LiftContext) -> LaurentSeries:
    """Keep the t^k with r | k and send them to t^(k/r).

    g is expanded to depth r * series_depth so the result is exact through
    t^series_depth.  The global factor r of a lifted diagram is applied by
    :func:`lift_r_tree`, not here.
    """
    r, depth = ctx.r, ctx.series_depth
    s = taylor_at_zero(g, r * depth)
    return LaurentSeries.from_dict(
        {k // r: c for k, c in s.terms().items() if k % r == 0}, depth, "t"
    )


def lift_series(s: LaurentSeries, r: int, depth: int) -> LaurentSeries:
    """Exponent filtering on an already expanded power series."""
    if s.order < r * depth:
        raise ValueError("series too short for the requested lift depth")
    return LaurentSeries.from_dict(
        {k // r: c for k, c in s.terms().items() if k % r == 0 and k >= 0}, depth, s.var
    )


def proportionality(lifted: LaurentSeries, original: LaurentSeries) -> Fraction | None:
    """lam with lifted == lam * original on the common range, or None."""
    if original.is_zero():
        return Fraction(1) if lifted.is_zero() else None
    e = original.min_exp
    lam = lifted[e] / original[e]
    return lam if lifted == original * lam else None


def pi_r(t: DecoratedTree, ctx: LiftContext) -> DecoratedTree:
    """Multiply by r^{-chi}; a bubble tree with V circles has -chi = V - 1."""
    return replace(t, coefficient=t.coefficient * Fraction(ctx.r) ** (-t.euler_characteristic()))


@lru_cache(maxsize=None)
def _circle_factor(scale: int, valence: int, ctx: LiftContext) -> Fraction | None:
    fn = apply_D(h_function(scale), valence - 1) * vertex_prefactor(scale, valence)
    return proportionality(lift_r_series(fn, ctx), taylor_at_zero(fn, ctx.series_depth))


@dataclass(frozen=True)
class LiftCheck:
    factors: tuple[Fraction, ...]  # per-circle proportionality constants
    matched_depth: int


def lift_r_tree(t: DecoratedTree, ctx: LiftContext) -> tuple[DecoratedTree, LiftCheck]:
    """Lift every circle decoration and multiply the diagram by r once.

    Each lifted decoration must be a scalar multiple of the original one as a
    series to ``ctx.series_depth``; the scalar is moved into the coefficient.
    """
    factors = []
    for v in t.vertices:
        if v.valence == 0:
            raise ValueError("lift_r is not defined here on valence-0 decorations")
        if gcd(v.scale, ctx.r) != 1:
            raise ValueError(f"scale {v.scale} is not coprime to r = {ctx.r}")
        lam = _circle_factor(v.scale, v.valence, ctx)
        if lam is None:
            raise ArithmeticError(f"lift of circle at scale {v.scale} is not proportional to it")
        factors.append(lam)
    coeff = t.coefficient * ctx.r
    for lam in factors:
        coeff *= lam
    return replace(t, coefficient=coeff), LiftCheck(tuple(factors), ctx.series_depth)


def lift_report(trees, r_values, depth: int = 40) -> list[dict]:
    out = []
    for t in trees:
        if t.n_vertices < 2:
            continue
        for r in r_values:
            ctx = LiftContext(r, depth)
            lifted, check = lift_r_tree(t, ctx)
            expected = pi_r(t, ctx)
            out.append(
                {
                    "tree": t.tree.to_json(),
                    "r": r,
                    "euler_exponent": -t.euler_characteristic(),
                    "circle_factors": [f"{f}" for f in check.factors],
                    "series_match_depth": check.matched_depth,
                    "verdict": lifted == expected,
                }
            )
    return out
