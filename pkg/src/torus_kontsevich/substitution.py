"""Substituting wheel series into small gluing graphs.

Each vertex of a connected gluing graph becomes a circle carrying the wheels
of its series, with the graph edges glued to wheel legs.  Two independent
routes are provided:

* a symbolic one: enumerate cyclic orderings of edges at each vertex
  (``resolve``), read the H^1 class of every arc, and telescope the sum over
  leg distributions into fragments with linear denominators
  (``reduce_term``);
* a brute-force one: enumerate every assignment of edges to legs of every
  wheel explicitly (``brute_force_glue``).

Trees are compared through ``LegProfile``: the number of free legs left on
each circle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import comb
from typing import Mapping, Sequence

from .graphs import ColoredMultigraph
from .recursion import DecoratedTree, TorusParams
from .ratfunc import apply_D, h_function
from .series import LaurentSeries, hair_expand, series_f

MAX_EDGES = 4
Vec = tuple  # integer coordinates in the H^1 basis


def _vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def _dot(u: Vec, pt: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, pt)), Fraction(0))


# --------------------------------------------------------------------------
# resolutions


@dataclass(frozen=True)
class ResolvedDiagram:
    """A gluing graph with every vertex replaced by a circle.

    ``orderings[x]`` lists the edges around circle ``x`` in cyclic order;
    ``arc_classes[x][j]`` is the H^1 class of the arc running from the j-th to
    the (j+1)-th attached edge (a single arc for valence 0 or 1).
    """

    source: ColoredMultigraph
    orderings: tuple[tuple[int, ...], ...]
    skeleton_nodes: int
    skeleton_edges: tuple[tuple[int, int], ...]
    h1_basis: tuple[tuple[int, ...], ...]  # one row per fundamental cycle
    arc_classes: tuple[tuple[Vec, ...], ...]

    @property
    def betti(self) -> int:
        return len(self.h1_basis)


def _cyclic_orders(items: Sequence[int]) -> list[tuple[int, ...]]:
    if len(items) <= 1:
        return [tuple(items)]
    first, rest = items[0], items[1:]
    return [(first,) + p for p in permutations(rest)]


def _fundamental_cycles(n_nodes: int, edges: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    """Signed edge-incidence vectors of fundamental cycles (BFS tree, lowest index first)."""
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n_nodes)]
    for k, (u, v) in enumerate(edges):
        adj[u].append((k, v, +1))
        adj[v].append((k, u, -1))
    parent_edge: list[tuple[int, int] | None] = [None] * n_nodes
    seen = [False] * n_nodes
    seen[0] = True
    queue = [0]
    tree = set()
    while queue:
        u = queue.pop(0)
        for k, w, sgn in sorted(adj[u]):
            if not seen[w]:
                seen[w] = True
                parent_edge[w] = (k, -sgn)  # orientation of edge k when walking w -> u
                tree.add(k)
                queue.append(w)
    if not all(seen):
        raise ValueError("skeleton is disconnected")

    def to_root(w: int) -> dict[int, int]:
        out: dict[int, int] = {}
        while parent_edge[w] is not None:
            k, sgn = parent_edge[w]
            out[k] = out.get(k, 0) + sgn
            u, v = edges[k]
            w = u if v == w else v
        return out

    cycles = []
    for k, (u, v) in enumerate(edges):
        if k in tree:
            continue
        # walk u -> v along k, then v -> root, then root -> u
        vec = [0] * len(edges)
        vec[k] += 1
        for e, s in to_root(v).items():
            vec[e] += s
        for e, s in to_root(u).items():
            vec[e] -= s
        cycles.append(tuple(vec))
    return cycles


def _resolve_one(g: ColoredMultigraph, orderings) -> ResolvedDiagram:
    nodes: dict[tuple[int, int], int] = {}
    for x, order in enumerate(orderings):
        for j in range(max(len(order), 1)):
            nodes[(x, j)] = len(nodes)
    sk_edges: list[tuple[int, int]] = []
    arc_index: list[list[int]] = []
    for x, order in enumerate(orderings):
        k = max(len(order), 1)
        idx = []
        for j in range(k):
            idx.append(len(sk_edges))
            sk_edges.append((nodes[(x, j)], nodes[(x, (j + 1) % k)]))
        arc_index.append(idx)
    for e, (u, v) in enumerate(g.edges):
        sk_edges.append((nodes[(u, orderings[u].index(e))], nodes[(v, orderings[v].index(e))]))
    cycles = _fundamental_cycles(len(nodes), sk_edges)
    arc_classes = tuple(
        tuple(tuple(cyc[a] for cyc in cycles) for a in idx) for idx in arc_index
    )
    return ResolvedDiagram(
        g, tuple(orderings), len(nodes), tuple(sk_edges), tuple(cycles), arc_classes
    )


def resolve(g: ColoredMultigraph) -> list[ResolvedDiagram]:
    """All ways of replacing vertices by circles, cyclic orders taken up to rotation."""
    if not g.is_connected():
        raise ValueError("resolve needs a connected gluing graph")
    if g.n_edges > MAX_EDGES:
        raise ValueError(f"resolve is limited to {MAX_EDGES} edges")
    incident = [[e for e, (i, j) in enumerate(g.edges) if x in (i, j)] for x in range(g.n_vertices)]
    choices = [_cyclic_orders(inc) for inc in incident]
    return [_resolve_one(g, combo) for combo in product(*choices)]


# --------------------------------------------------------------------------
# telescoping reduction


@dataclass(frozen=True)
class Fragment:
    """coeff * y^power * prod(numerators) / prod(denominators), all classes linear."""

    coeff: Fraction
    y: Vec
    power: int
    numerators: tuple[Vec, ...] = ()
    denominators: tuple[Vec, ...] = ()

    @property
    def p(self) -> int:
        return len(self.denominators)

    def evaluate(self, pt: Sequence) -> Fraction:
        val = self.coeff * _dot(self.y, pt) ** self.power
        for u in self.numerators:
            val *= _dot(u, pt)
        for u in self.denominators:
            val /= _dot(u, pt)
        return val


def _pick_pair(classes: list[Vec], rng: random.Random | None) -> tuple[int, int] | None:
    pairs = [
        (i, j)
        for i in range(len(classes))
        for j in range(i + 1, len(classes))
        if classes[i] != classes[j]
    ]
    if not pairs:
        return None
    if rng is not None:
        return rng.choice(pairs)
    i, j = min(pairs, key=lambda ij: (min(classes[ij[0]], classes[ij[1]]), max(classes[ij[0]], classes[ij[1]])))
    if classes[i] > classes[j]:
        i, j = j, i
    return i, j


def reduce_term(classes: Sequence[Vec], n: int, rng: random.Random | None = None) -> list[Fragment]:
    """Fragments of n * sum_{i_1+..+i_k = n-k} x_1^{i_1} .. x_k^{i_k}.

    Repeatedly replaces a pair of distinct classes u, w by
    (u h(.., u) - w h(.., w)) / (u - w) until every residual list is constant.
    The default pair is the lexicographically least one; passing ``rng`` picks
    pairs at random instead.
    """
    k = len(classes)
    if k < 1:
        raise ValueError("reduce_term needs at least one class")
    if n < k:
        return []
    m = n - k
    out: list[Fragment] = []
    stack = [(Fraction(n), list(classes), (), ())]
    while stack:
        coeff, cls, nums, dens = stack.pop()
        pair = _pick_pair(cls, rng)
        if pair is None:
            j = len(cls)
            out.append(Fragment(coeff * comb(m + j - 1, j - 1), cls[0], m, nums, dens))
            continue
        i, j = pair
        u, w = cls[i], cls[j]
        rest = [c for t, c in enumerate(cls) if t not in (i, j)]
        d = dens + (_vsub(u, w),)
        stack.append((coeff, rest + [u], nums + (u,), d))
        stack.append((-coeff, rest + [w], nums + (w,), d))
    out.sort(key=lambda f: (f.p, f.y, f.numerators, f.denominators, f.coeff))
    return out


def complete_homogeneous(classes: Sequence[Vec], m: int, pt: Sequence) -> Fraction:
    """sum over i_1+..+i_k = m of prod x_j^{i_j}, evaluated at pt, by direct enumeration."""
    vals = [_dot(c, pt) for c in classes]

    def rec(idx: int, left: int) -> Fraction:
        if idx == len(vals) - 1:
            return vals[idx] ** left
        return sum((vals[idx] ** i * rec(idx + 1, left - i) for i in range(left + 1)), Fraction(0))

    return rec(0, m)


@dataclass(frozen=True)
class SubstitutionTerm:
    diagram: ResolvedDiagram
    fragments: tuple[Fragment, ...]  # one per source vertex
    wheel_orders: tuple[int, ...]

    @property
    def p_list(self) -> tuple[int, ...]:
        return tuple(f.p for f in self.fragments)

    @property
    def bprime_degree(self) -> int:
        return bprime_degree(self)


def bprime_degree(term: SubstitutionTerm) -> int:
    return -sum(term.p_list)


def substitution_terms(g: ColoredMultigraph, wheel_orders: Sequence[int] | None = None) -> list[SubstitutionTerm]:
    """Every term of the substitution of g at fixed wheel orders (default valence + 2)."""
    val = g.valences()
    orders = tuple(wheel_orders) if wheel_orders is not None else tuple(k + 2 for k in val)
    terms = []
    for diag in resolve(g):
        per_vertex = []
        for x, arcs in enumerate(diag.arc_classes):
            if val[x] == 0:
                per_vertex.append([Fragment(Fraction(1), arcs[0], orders[x])])
            else:
                per_vertex.append(reduce_term(list(arcs), orders[x]))
        for combo in product(*per_vertex):
            terms.append(SubstitutionTerm(diag, tuple(combo), orders))
    return terms


# --------------------------------------------------------------------------
# brute-force gluing


def _arc_counts(positions: Sequence[int], n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Cyclic order of the attached edges and free legs on each arc between them."""
    k = len(positions)
    order = sorted(range(k), key=lambda e: positions[e])
    start = order.index(0)
    order = order[start:] + order[:start]
    gaps = []
    for t in range(k):
        a = positions[order[t]]
        b = positions[order[(t + 1) % k]]
        gaps.append((b - a - 1) % n)
    return tuple(order), tuple(gaps)


def brute_force_vertex(classes: Sequence[Vec], n: int, pt: Sequence) -> Fraction:
    """Sum over assignments of k edges to the n legs of a wheel that respect the
    cyclic order (e_1, .., e_k), each weighted by prod (arc class)^(free legs)."""
    k = len(classes)
    vals = [_dot(c, pt) for c in classes]
    total = Fraction(0)
    target = tuple(range(k))
    for pos in permutations(range(n), k):
        order, gaps = _arc_counts(pos, n)
        if order != target:
            continue
        term = Fraction(1)
        for v, g_ in zip(vals, gaps):
            term *= v**g_
        total += term
    return total


@dataclass(frozen=True)
class LegProfile:
    """Coefficients indexed by the number of free legs on each circle."""

    counts: Mapping[tuple[int, ...], Fraction]
    total_degree: int

    @classmethod
    def make(cls, counts: Mapping, total_degree: int) -> "LegProfile":
        return cls(
            {k: Fraction(v) for k, v in sorted(counts.items()) if v != 0 and sum(k) <= total_degree},
            total_degree,
        )

    def __eq__(self, other):
        if not isinstance(other, LegProfile):
            return NotImplemented
        n = min(self.total_degree, other.total_degree)
        a = {k: v for k, v in self.counts.items() if sum(k) <= n}
        b = {k: v for k, v in other.counts.items() if sum(k) <= n}
        return a == b

    __hash__ = None

    def to_json(self) -> list:
        return [
            {"legs": list(k), "coeff": f"{v.numerator}/{v.denominator}"}
            for k, v in self.counts.items()
        ]


def _combine(per_vertex: list[dict[int, Fraction]], total: int) -> dict[tuple[int, ...], Fraction]:
    acc: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
    for d in per_vertex:
        nxt: dict[tuple[int, ...], Fraction] = {}
        for key, c in acc.items():
            used = sum(key)
            for legs, w in d.items():
                if used + legs <= total:
                    nxt[key + (legs,)] = nxt.get(key + (legs,), Fraction(0)) + c * w
        acc = nxt
    return acc


def brute_force_glue(
    g: ColoredMultigraph, series: Mapping[str, LaurentSeries], total_degree: int
) -> LegProfile:
    """Glue the edges of a tree g to wheels of the vertex series in every way.

    For each vertex and each wheel order n, every injective assignment of the
    incident edges to the n legs is enumerated; the free legs left on the
    circle are counted.  Vertices are kept in the canonical order of ``g``.
    """
    if not g.is_tree():
        raise ValueError("leg profiles are defined for trees only")
    if g.n_edges > 3 or total_degree > 12:
        raise ValueError("brute force is limited to 3 edges and total degree 12")
    val = g.valences()
    per_vertex = []
    for x, k in enumerate(val):
        s = series[g.colors[x]]
        d: dict[int, Fraction] = {}
        for n in range(max(k, 1), total_degree + k + 1):
            if n > s.order:
                raise ValueError("vertex series not known to the required order")
            c = s[n]
            if c == 0:
                continue
            ways = sum(1 for _ in permutations(range(n), k))
            d[n - k] = d.get(n - k, Fraction(0)) + c * ways
        per_vertex.append(d)
    return LegProfile.make(_combine(per_vertex, total_degree), total_degree)


def polar_correction(valence: int, order: int) -> LaurentSeries:
    """(d/dh)^{k-1} of -1/(2h): the non-rational part of a glued vertex."""
    k = valence
    if k < 1:
        return LaurentSeries.zero(order)
    c = Fraction(-1, 2)
    for i in range(1, k):
        c *= -i
    return LaurentSeries.make(-k, [c], order)


def leg_profile_of_tree(t: DecoratedTree, total_degree: int, with_polar: bool = True) -> LegProfile:
    """Expand each circle decoration in its own class and multiply.

    The graph coefficient of ``t`` is not included.  With ``with_polar`` the
    polar part dropped from the rational decoration is added back, so each
    circle carries a genuine power series; a leftover pole means the
    decoration is mis-normalized.
    """
    per_vertex = []
    for v in t.vertices:
        s = v.hair(total_degree)
        if with_polar:
            s = s + polar_correction(v.valence, total_degree)
        if s.min_exp < 0:
            raise ValueError(
                f"decoration at scale {v.scale}, valence {v.valence} leaves a pole of order {-s.min_exp}"
            )
        per_vertex.append({e: c for e, c in s.terms().items()})
    return LegProfile.make(_combine(per_vertex, total_degree), total_degree)


def symbolic_tree_profile(g: ColoredMultigraph, series: Mapping[str, LaurentSeries], total_degree: int) -> LegProfile:
    """Tree profile from the resolutions: sum over cyclic orders of the p = 0 fragments."""
    if not g.is_tree():
        raise ValueError("trees only")
    val = g.valences()
    diagrams = resolve(g)
    per_vertex = []
    for x, k in enumerate(val):
        s = series[g.colors[x]]
        d: dict[int, Fraction] = {}
        for n in range(max(k, 1), total_degree + k + 1):
            c = s[n]
            if c == 0:
                continue
            if k == 0:
                d[n] = d.get(n, Fraction(0)) + c
                continue
            # cyclic orders at x are the distinct values of diagrams[*].orderings[x]
            orders = {diag.orderings[x]: diag for diag in diagrams}
            for diag in orders.values():
                for frag in reduce_term(list(diag.arc_classes[x]), n):
                    if frag.p:
                        raise ArithmeticError("tree vertex produced a fragment with p > 0")
                    d[n - k] = d.get(n - k, Fraction(0)) + c * frag.coeff
        per_vertex.append(d)
    return LegProfile.make(_combine(per_vertex, total_degree), total_degree)


def settle_prefactor(scale: int, valence: int, total_degree: int = 10) -> Fraction:
    """Find lam with  brute force = lam * (1/4) D^{k-1} h(t^n) + polar  at one circle.

    lam is read off the leading pole and then checked on every coefficient up
    to ``total_degree``; a mismatch raises.
    """
    k = valence
    if k < 1:
        raise ValueError("valence must be >= 1")
    s = series_f(scale, total_degree + k)
    brute: dict[int, Fraction] = {}
    for n in range(k, total_degree + k + 1):
        c = s[n]
        if c:
            brute[n - k] = brute.get(n - k, Fraction(0)) + c * sum(1 for _ in permutations(range(n), k))
    rational = hair_expand(apply_D(h_function(scale), k - 1) * Fraction(1, 4), total_degree)
    polar = polar_correction(k, total_degree)
    lam = -polar[-k] / rational[-k]
    for e in range(-k, total_degree + 1):
        if lam * rational[e] + polar[e] != brute.get(e, 0):
            raise ArithmeticError(f"no single prefactor fits at x^{e}")
    return lam


def oracle_report(params: TorusParams, graphs: Sequence[ColoredMultigraph], total_degree: int) -> list[dict]:
    series = {c: series_f(params.scale(c), total_degree + 4) for c in ("a", "b", "c")}
    out = []
    for g in graphs:
        brute = brute_force_glue(g, series, total_degree)
        symb = leg_profile_of_tree(DecoratedTree.from_tree(g, 1, params), total_degree)
        out.append(
            {
                "graph": g.to_json(),
                "total_degree": total_degree,
                "brute_force": brute.to_json(),
                "symbolic": symb.to_json(),
                "verdict": brute == symb,
            }
        )
    return out
