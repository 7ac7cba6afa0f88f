"""Gluing-graph recursion for torus knots and the bubble-tree series built from it.

Colors: ``*`` is the active color (series f(x)); ``a``, ``b``, ``c`` are inert
and stand for f(px), f(qx) and f(pqx).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .graphs import (
    ColoredMultigraph,
    GraphSeries,
    glue_log,
    relabel,
    rescale,
    vertex,
)
from .ratfunc import RationalFunction, apply_D, h_function
from .series import LaurentSeries, hair_expand, series_f

ACTIVE = "*"
INERT = ("a", "b", "c")
SCALE_LABEL = {"a": "p", "b": "q", "c": "pq"}


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class TorusParams:
    p: int
    q: int
    e_max: int = 3

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be >= 2")
        if abs(self.q) < 2:
            raise ValueError("|q| must be >= 2")
        if gcd(self.p, self.q) != 1:
            raise ValueError("p and q must be coprime")
        if self.e_max < 0:
            raise ValueError("e_max must be >= 0")

    @property
    def pq(self) -> int:
        return self.p * self.q

    def scale(self, color: str) -> int:
        return {"a": self.p, "b": self.q, "c": self.pq, ACTIVE: 1}[color]


def x_minus_one(params: TorusParams) -> GraphSeries:
    e = params.e_max
    prod = glue_log(
        GraphSeries.single(vertex("a"), e), GraphSeries.single(vertex("b"), e), {"a"}, {"b"}
    )
    return rescale(rescale(prod, "a", params.p), "b", params.q)


def project_pq(x: GraphSeries, params: TorusParams) -> GraphSeries:
    """Active legs scaled by pq: rescale the * vertices, then recolor them c."""
    return relabel(rescale(x, ACTIVE, params.pq), {ACTIVE: "c"})


def recursion_step(
    x_prev_pq: GraphSeries, x_cur: GraphSeries, x_cur_pq: GraphSeries, params: TorusParams
) -> GraphSeries:
    """X^{n+1} = (X^{n-1}_pq - X^n_pq) x_{abc,*} X^n - (X^{n-1}_pq - X^n_pq)."""
    diff = x_prev_pq - x_cur_pq
    stray = diff.colors() - set(INERT)
    if stray:
        raise ValueError(f"inert difference carries non-inert colors {sorted(stray)}")
    return glue_log(diff, x_cur, set(INERT), {ACTIVE}) - diff


def recursion_sequence(params: TorusParams, steps: int) -> tuple[list[GraphSeries], list[GraphSeries]]:
    """Return ([X^0 .. X^steps], [X^-1_pq, X^0_pq, .., X^steps_pq])."""
    xs = [GraphSeries.single(vertex(ACTIVE), params.e_max)]
    pqs = [x_minus_one(params), project_pq(xs[0], params)]
    for _ in range(steps):
        nxt = recursion_step(pqs[-2], xs[-1], pqs[-1], params)
        xs.append(nxt)
        pqs.append(project_pq(nxt, params))
    return xs, pqs


def x_pq_limit(params: TorusParams, max_iter: int | None = None) -> GraphSeries:
    """X_{p,q} = lim_n (X^{-1}_pq - X^n_pq), exact through e_max edges."""
    cap = params.e_max + 3 if max_iter is None else max_iter
    x_cur = GraphSeries.single(vertex(ACTIVE), params.e_max)
    prev_pq, cur_pq = x_minus_one(params), project_pq(x_cur, params)
    x_m1 = prev_pq
    for _ in range(cap):
        nxt = recursion_step(prev_pq, x_cur, cur_pq, params)
        nxt_pq = project_pq(nxt, params)
        if nxt_pq == cur_pq:
            return x_m1 - cur_pq
        x_cur, prev_pq, cur_pq = nxt, cur_pq, nxt_pq
    raise ConvergenceError(f"no stabilization within {cap} iterations")


def extract_trees(x: GraphSeries) -> list[tuple[ColoredMultigraph, Fraction]]:
    return [(g, c) for g, c in x.sorted_terms() if g.is_tree()]


# --------------------------------------------------------------------------
# decorated bubble trees


def vertex_prefactor(scale: int, valence: int) -> Fraction:
    """Constant in front of D^{k-1} h(t^n) at a circle of valence k >= 1.

    Gluing k edges to the wheels of f(n x) in every way gives the k-th
    derivative of f(n h); its rational part is (n/4) D^{k-1} h(t^n).  The
    brute-force gluing check in ``substitution`` pins this value.
    """
    if valence < 1:
        raise ValueError("prefactor applies to valence >= 1")
    return Fraction(scale, 4)


@dataclass(frozen=True)
class VertexDecoration:
    color: str
    scale: int
    valence: int

    @property
    def label(self) -> str:
        return SCALE_LABEL.get(self.color, str(self.scale))

    @property
    def tag(self) -> str:
        return "f" if self.valence == 0 else f"D{self.valence - 1}_h"

    @property
    def prefactor(self) -> Fraction:
        return Fraction(1) if self.valence == 0 else vertex_prefactor(self.scale, self.valence)

    def function(self) -> RationalFunction | None:
        """prefactor * D^{k-1} h(t^n), or None for the valence-0 series f(n h)."""
        if self.valence == 0:
            return None
        return apply_D(h_function(self.scale), self.valence - 1) * self.prefactor

    def hair(self, order: int) -> LaurentSeries:
        if self.valence == 0:
            return series_f(self.scale, order)
        return hair_expand(self.function(), order)

    def to_json(self) -> dict:
        p = self.prefactor
        return {
            "scale": self.label,
            "valence": self.valence,
            "decoration": self.tag,
            "prefactor": f"{p.numerator}/{p.denominator}",
        }


@dataclass(frozen=True)
class DecoratedTree:
    tree: ColoredMultigraph
    coefficient: Fraction
    vertices: tuple[VertexDecoration, ...]

    def __post_init__(self):
        if not self.tree.is_tree():
            raise ValueError("a decorated tree needs a simple connected acyclic graph")

    @classmethod
    def from_tree(cls, g: ColoredMultigraph, coeff, params: TorusParams) -> "DecoratedTree":
        val = g.valences()
        decs = tuple(
            VertexDecoration(col, params.scale(col), k) for col, k in zip(g.colors, val)
        )
        return cls(g, Fraction(coeff), decs)

    @property
    def n_vertices(self) -> int:
        return self.tree.n_vertices

    def euler_characteristic(self) -> int:
        """chi of the bubble diagram: V circles joined along E = V - 1 edges."""
        return 1 - self.n_vertices

    def to_json(self) -> dict:
        c = self.coefficient
        return {
            "tree": self.tree.to_json(),
            "coeff": f"{c.numerator}/{c.denominator}",
            "vertices": [v.to_json() for v in self.vertices],
        }


def y_rat(params: TorusParams, x_pq: GraphSeries | None = None) -> list[DecoratedTree]:
    if x_pq is None:
        x_pq = x_pq_limit(params)
    return [DecoratedTree.from_tree(g, c, params) for g, c in extract_trees(x_pq)]


def hair_valence_zero(trees: list[DecoratedTree], order: int) -> LaurentSeries:
    """Sum of the single-circle terms of the bubble-tree series, expanded in h."""
    total = LaurentSeries.zero(order)
    for t in trees:
        if t.n_vertices == 1:
            total = total + t.vertices[0].hair(order) * t.coefficient
    return total
