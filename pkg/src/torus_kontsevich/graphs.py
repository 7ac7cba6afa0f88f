"""Vertex-colored multigraphs and truncated rational series of them.

Graphs are stored in canonical form, so two ``ColoredMultigraph`` values are
equal exactly when the underlying colored multigraphs are isomorphic.  A
``GraphSeries`` is a finite linear combination truncated by edge count and,
when needed, by vertex count: the exponential of a series with single-vertex
terms has infinitely many edgeless terms, so the vertex budget is what keeps
``graph_exp`` finite.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterable, Mapping, Sequence


# --------------------------------------------------------------------------
# canonical labeling


def _adjacency(n: int, edges: Sequence[tuple[int, int]]) -> list[dict[int, int]]:
    adj: list[dict[int, int]] = [defaultdict(int) for _ in range(n)]
    for i, j in edges:
        adj[i][j] += 1
        adj[j][i] += 1
    return adj


def _refine(labels: list, adj: list[dict[int, int]]) -> list[int]:
    while True:
        sigs = [
            (labels[v], tuple(sorted((labels[u], m) for u, m in adj[v].items())))
            for v in range(len(labels))
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == len(set(labels)):
            return new
        labels = new


def _leaves(labels: list[int], adj):
    """Individualization-refinement search; yields discrete rank vectors."""
    labels = _refine(labels, adj)
    counts = Counter(labels)
    if len(counts) == len(labels):
        yield labels
        return
    target = min(r for r, c in counts.items() if c > 1)
    for v in [v for v, r in enumerate(labels) if r == target]:
        ind = [2 * r + 1 for r in labels]
        ind[v] = 2 * labels[v]
        yield from _leaves(ind, adj)


def _canonical_connected(colors: tuple, edges: tuple) -> tuple[tuple, tuple, int]:
    n = len(colors)
    if n == 0:
        return (), (), 1
    adj = _adjacency(n, edges)
    palette = {c: i for i, c in enumerate(sorted(set(colors)))}
    best = None
    best_leaf = None
    count = 0
    for leaf in _leaves([palette[c] for c in colors], adj):
        cert = tuple(sorted(tuple(sorted((leaf[i], leaf[j]))) for i, j in edges))
        if best is None or cert < best:
            best, best_leaf, count = cert, leaf, 1
        elif cert == best:
            count += 1
    order = [None] * n
    for v, r in enumerate(best_leaf):
        order[r] = colors[v]
    return tuple(order), best, count


def _components(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, list[int]] = defaultdict(list)
    for v in range(n):
        groups[find(v)].append(v)
    return list(groups.values())


@lru_cache(maxsize=None)
def _canonical(colors: tuple, edges: tuple) -> tuple[tuple, tuple, int]:
    n = len(colors)
    for i, j in edges:
        if i == j:
            raise ValueError("self-loops are not allowed")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge {(i, j)} out of range")
    comps = _components(n, edges)
    if len(comps) == 1:
        return _canonical_connected(colors, tuple(sorted(tuple(sorted(e)) for e in edges)))
    forms = []
    for comp in comps:
        idx = {v: k for k, v in enumerate(comp)}
        sub_e = tuple(
            sorted(tuple(sorted((idx[i], idx[j]))) for i, j in edges if i in idx)
        )
        forms.append(_canonical_connected(tuple(colors[v] for v in comp), sub_e))
    # order components by (size, edges, colors) so the concatenation is canonical
    forms.sort(key=lambda f: (len(f[0]), len(f[1]), f[0], f[1]))
    out_colors: list = []
    out_edges: list = []
    aut = 1
    for c, e, a in forms:
        off = len(out_colors)
        out_colors.extend(c)
        out_edges.extend((i + off, j + off) for i, j in e)
        aut *= a
    for mult in Counter((f[0], f[1]) for f in forms).values():
        aut *= factorial(mult)
    return tuple(out_colors), tuple(out_edges), aut


@dataclass(frozen=True, order=True)
class ColoredMultigraph:
    """A colored multigraph in canonical form.  Build with :func:`canonicalize`."""

    colors: tuple
    edges: tuple

    @property
    def n_vertices(self) -> int:
        return len(self.colors)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def aut(self) -> int:
        return _canonical(self.colors, self.edges)[2]

    @property
    def canonical_key(self) -> bytes:
        return json.dumps([list(self.colors), [list(e) for e in self.edges]]).encode()

    def valences(self) -> list[int]:
        val = [0] * len(self.colors)
        for i, j in self.edges:
            val[i] += 1
            val[j] += 1
        return val

    def neighbours(self) -> list[Counter]:
        out = [Counter() for _ in self.colors]
        for i, j in self.edges:
            out[i][j] += 1
            out[j][i] += 1
        return out

    def is_connected(self) -> bool:
        return len(self.colors) > 0 and len(_components(len(self.colors), self.edges)) == 1

    def is_tree(self) -> bool:
        """Connected, acyclic and free of multi-edges."""
        return (
            self.is_connected()
            and len(self.edges) == len(self.colors) - 1
            and len(set(self.edges)) == len(self.edges)
        )

    def disjoint_union(self, other: "ColoredMultigraph") -> "ColoredMultigraph":
        off = len(self.colors)
        return canonicalize(
            self.colors + other.colors,
            self.edges + tuple((i + off, j + off) for i, j in other.edges),
        )

    def sort_key(self):
        return (len(self.edges), len(self.colors), self.colors, self.edges)

    def to_json(self) -> dict:
        return {"colors": list(self.colors), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "ColoredMultigraph":
        return canonicalize(obj["colors"], [tuple(e) for e in obj["edges"]])

    def __repr__(self) -> str:
        if not self.edges:
            body = " ".join(f"•{c}" for c in self.colors) or "∅"
        else:
            body = ", ".join(
                f"{self.colors[i]}{i}-{self.colors[j]}{j}" for i, j in self.edges
            )
            isolated = [v for v, k in enumerate(self.valences()) if k == 0]
            if isolated:
                body += "; " + " ".join(f"•{self.colors[v]}" for v in isolated)
        return f"G[{body}]"


def canonicalize(colors: Iterable, edges: Iterable[Sequence[int]] = ()) -> ColoredMultigraph:
    c, e, _ = _canonical(
        tuple(colors), tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in edges))
    )
    return ColoredMultigraph(c, e)


def vertex(color: str) -> ColoredMultigraph:
    return canonicalize((color,))


def path(*colors: str) -> ColoredMultigraph:
    return canonicalize(colors, [(i, i + 1) for i in range(len(colors) - 1)])


def multi_edge(a: str, b: str, k: int) -> ColoredMultigraph:
    return canonicalize((a, b), [(0, 1)] * k)


EMPTY = canonicalize(())


# --------------------------------------------------------------------------
# series


def _fmt(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class GraphSeries:
    """Finite rational combination of canonical graphs.

    ``terms`` must not be mutated.  Graphs with more than ``e_max`` edges (or
    more than ``v_max`` vertices, when set) are outside the known range and are
    never stored.
    """

    terms: Mapping[ColoredMultigraph, Fraction]
    e_max: int
    v_max: int | None = None
    dropped: int = field(default=0, compare=False)

    @classmethod
    def make(
        cls,
        items: Iterable[tuple[ColoredMultigraph, object]] | Mapping,
        e_max: int,
        v_max: int | None = None,
    ) -> "GraphSeries":
        acc: dict[ColoredMultigraph, Fraction] = defaultdict(Fraction)
        dropped = 0
        if isinstance(items, Mapping):
            items = items.items()
        for g, c in items:
            if g.n_edges > e_max or (v_max is not None and g.n_vertices > v_max):
                dropped += 1
                continue
            acc[g] += Fraction(c)
        return cls({g: c for g, c in acc.items() if c != 0}, e_max, v_max, dropped)

    @classmethod
    def zero(cls, e_max: int, v_max: int | None = None) -> "GraphSeries":
        return cls({}, e_max, v_max)

    @classmethod
    def one(cls, e_max: int, v_max: int | None = None) -> "GraphSeries":
        return cls({EMPTY: Fraction(1)}, e_max, v_max)

    @classmethod
    def single(cls, g: ColoredMultigraph, e_max: int, v_max: int | None = None, coeff=1):
        return cls.make([(g, coeff)], e_max, v_max)

    # -- basic algebra ---------------------------------------------------

    def _budget(self, other: "GraphSeries") -> tuple[int, int | None]:
        e = min(self.e_max, other.e_max)
        vs = [v for v in (self.v_max, other.v_max) if v is not None]
        return e, (min(vs) if vs else None)

    def __add__(self, other: "GraphSeries") -> "GraphSeries":
        e, v = self._budget(other)
        return GraphSeries.make(
            list(self.terms.items()) + list(other.terms.items()), e, v
        )

    def __neg__(self) -> "GraphSeries":
        return GraphSeries({g: -c for g, c in self.terms.items()}, self.e_max, self.v_max)

    def __sub__(self, other: "GraphSeries") -> "GraphSeries":
        return self + (-other)

    def scale(self, k) -> "GraphSeries":
        k = Fraction(k)
        return GraphSeries.make([(g, c * k) for g, c in self.terms.items()], self.e_max, self.v_max)

    def __mul__(self, other):
        """Disjoint-union product."""
        if not isinstance(other, GraphSeries):
            return self.scale(other)
        e, v = self._budget(other)
        out = []
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                if g.n_edges + h.n_edges > e:
                    continue
                if v is not None and g.n_vertices + h.n_vertices > v:
                    continue
                out.append((g.disjoint_union(h), a * b))
        return GraphSeries.make(out, e, v)

    __rmul__ = __mul__

    def truncate(self, e_max: int | None = None, v_max: int | None = None) -> "GraphSeries":
        e = self.e_max if e_max is None else min(e_max, self.e_max)
        if v_max is None:
            v = self.v_max
        else:
            v = v_max if self.v_max is None else min(v_max, self.v_max)
        return GraphSeries.make(self.terms, e, v)

    def part(self, n_edges: int) -> dict[ColoredMultigraph, Fraction]:
        return {g: c for g, c in self.terms.items() if g.n_edges == n_edges}

    def coeff(self, g: ColoredMultigraph) -> Fraction:
        return self.terms.get(g, Fraction(0))

    def __getitem__(self, g: ColoredMultigraph) -> Fraction:
        return self.coeff(g)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list[tuple[ColoredMultigraph, Fraction]]:
        return sorted(self.terms.items(), key=lambda gc: gc[0].sort_key())

    @property
    def is_connected(self) -> bool:
        return all(g.is_connected() for g in self.terms)

    def colors(self) -> set:
        return {c for g in self.terms for c in g.colors}

    def min_edges(self) -> int | None:
        return min((g.n_edges for g in self.terms), default=None)

    def agrees_with(self, other: "GraphSeries", e_max: int | None = None) -> bool:
        e, _ = self._budget(other)
        if e_max is not None:
            e = min(e, e_max)
        diff = self.truncate(e) - other.truncate(e)
        return not diff.terms

    def __eq__(self, other):
        if not isinstance(other, GraphSeries):
            return NotImplemented
        return self.agrees_with(other)

    __hash__ = None

    def to_json(self) -> list:
        return [{"graph": g.to_json(), "coeff": _fmt(c)} for g, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, obj: list, e_max: int, v_max: int | None = None) -> "GraphSeries":
        return cls.make(
            [(ColoredMultigraph.from_json(t["graph"]), Fraction(t["coeff"])) for t in obj],
            e_max,
            v_max,
        )

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{g!r}" for g, c in self.sorted_terms()) or "0"
        return f"GraphSeries({body}; E<={self.e_max})"


# --------------------------------------------------------------------------
# Hopf structure


def _require_finite(x: GraphSeries, what: str) -> None:
    if x.v_max is None and any(g.n_edges == 0 for g in x.terms):
        raise ValueError(f"{what}: edgeless terms need a vertex budget (v_max)")


def graph_exp(x: GraphSeries) -> GraphSeries:
    """sum_k x^k / k! under disjoint union."""
    if EMPTY in x.terms:
        raise ValueError("graph_exp: the empty graph is not primitive")
    if not x.is_connected:
        raise ValueError("graph_exp: input must be a series of connected graphs")
    _require_finite(x, "graph_exp")
    result = GraphSeries.one(x.e_max, x.v_max)
    power = GraphSeries.one(x.e_max, x.v_max)
    k = 0
    while power.terms:
        k += 1
        power = (power * x).scale(Fraction(1, k))
        result = result + power
    return result


def graph_log(u: GraphSeries) -> GraphSeries:
    """Inverse of :func:`graph_exp` on series with unit constant term."""
    if u.coeff(EMPTY) != 1:
        raise ValueError("graph_log: coefficient of the empty graph must be 1")
    w = u - GraphSeries.one(u.e_max, u.v_max)
    _require_finite(w, "graph_log")
    result = GraphSeries.zero(u.e_max, u.v_max)
    power = GraphSeries.one(u.e_max, u.v_max)
    k = 0
    while True:
        k += 1
        power = power * w
        if not power.terms:
            return result
        result = result + power.scale(Fraction((-1) ** (k + 1), k))


def _check_sets(A, B) -> tuple[frozenset, frozenset]:
    A, B = frozenset(A), frozenset(B)
    if A & B:
        raise ValueError(f"color sets overlap: {sorted(A & B)}")
    return A, B


def _join(g: ColoredMultigraph, h: ColoredMultigraph, new_edges) -> ColoredMultigraph:
    off = g.n_vertices
    return canonicalize(
        g.colors + h.colors,
        g.edges + tuple((i + off, j + off) for i, j in h.edges) + tuple(new_edges),
    )


def glue_product(u: GraphSeries, v: GraphSeries, A, B) -> GraphSeries:
    """exp-level gluing: add every finite multiset of A-to-B edges between terms.

    Each term pair is taken on one labeled representative and every multiset of
    new edges is counted once.
    """
    A, B = _check_sets(A, B)
    e_max, v_max = u._budget(v)
    out = []
    for g, a in u.terms.items():
        for h, b in v.terms.items():
            if v_max is not None and g.n_vertices + h.n_vertices > v_max:
                continue
            budget = e_max - g.n_edges - h.n_edges
            if budget < 0:
                continue
            off = g.n_vertices
            pairs = [
                (i, j + off)
                for i, ci in enumerate(g.colors)
                if ci in A
                for j, cj in enumerate(h.colors)
                if cj in B
            ]
            for m in range(budget + 1):
                if m and not pairs:
                    break
                for extra in combinations_with_replacement(pairs, m):
                    out.append((_join(g, h, extra), a * b))
    return GraphSeries.make(out, e_max, v_max)


def _multisets(weights: Sequence[int], max_count: int, max_weight: int, start: int = 0):
    """Nondecreasing index tuples of length 1..max_count with weight budget."""
    for i in range(start, len(weights)):
        w = weights[i]
        if w > max_weight:
            continue
        yield (i,)
        if max_count > 1:
            for rest in _multisets(weights, max_count - 1, max_weight - w, i):
                yield (i,) + rest


def _connected_after(sizes: list[int], comp_of: list[int], extra) -> bool:
    parent = list(range(len(sizes)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    groups = len(sizes)
    for i, j in extra:
        ri, rj = find(comp_of[i]), find(comp_of[j])
        if ri != rj:
            parent[ri] = rj
            groups -= 1
    return groups == 1


def glue_log(x: GraphSeries, y: GraphSeries, A, B) -> GraphSeries:
    """log(exp(x) . exp(y)) for connected series x, y.

    Computed directly as the connected part of the glued product: a connected
    result either is a single term of x or y, or is built from a multiset of
    x-components and y-components joined by new A-B edges into one component.
    """
    A, B = _check_sets(A, B)
    if not (x.is_connected and y.is_connected):
        raise ValueError("glue_log: inputs must be connected series")
    e_max, v_max = x._budget(y)
    out: list = list(x.truncate(e_max).terms.items()) + list(y.truncate(e_max).terms.items())
    xs = [(g, c) for g, c in x.terms.items() if any(col in A for col in g.colors)]
    ys = [(g, c) for g, c in y.terms.items() if any(col in B for col in g.colors)]
    if not xs or not ys:
        return GraphSeries.make(out, e_max, v_max)
    xw = [g.n_edges for g, _ in xs]
    yw = [g.n_edges for g, _ in ys]
    for m in range(1, e_max + 1):
        budget = e_max - m
        for xi in _multisets(xw, m, budget):
            x_edges = sum(xw[i] for i in xi)
            for yi in _multisets(yw, m + 1 - len(xi), budget - x_edges):
                comps = [xs[i][0] for i in xi] + [ys[j][0] for j in yi]
                n_vert = sum(g.n_vertices for g in comps)
                if v_max is not None and n_vert > v_max:
                    continue
                coeff = Fraction(1)
                for i, k in Counter(xi).items():
                    coeff *= xs[i][1] ** k / factorial(k)
                for j, k in Counter(yi).items():
                    coeff *= ys[j][1] ** k / factorial(k)
                colors: list = []
                edges: list = []
                comp_of: list[int] = []
                left: list[int] = []
                right: list[int] = []
                for ci, g in enumerate(comps):
                    off = len(colors)
                    for v_, col in enumerate(g.colors):
                        if ci < len(xi) and col in A:
                            left.append(off + v_)
                        elif ci >= len(xi) and col in B:
                            right.append(off + v_)
                    colors.extend(g.colors)
                    comp_of.extend([ci] * g.n_vertices)
                    edges.extend((i + off, j + off) for i, j in g.edges)
                pairs = [(i, j) for i in left for j in right]
                sizes = [g.n_vertices for g in comps]
                colors_t = tuple(colors)
                for extra in combinations_with_replacement(pairs, m):
                    if not _connected_after(sizes, comp_of, extra):
                        continue
                    out.append((canonicalize(colors_t, edges + list(extra)), coeff))
    return GraphSeries.make(out, e_max, v_max)


def rescale(x: GraphSeries, color: str, r) -> GraphSeries:
    """Divide each graph by r^N, N the total valence of its ``color`` vertices."""
    r = Fraction(r)
    if r == 0:
        raise ValueError("rescale factor must be nonzero")
    out = []
    for g, c in x.terms.items():
        val = g.valences()
        n = sum(k for k, col in zip(val, g.colors) if col == color)
        out.append((g, c / r**n))
    return GraphSeries.make(out, x.e_max, x.v_max)


def relabel(x: GraphSeries, mapping: Mapping[str, str]) -> GraphSeries:
    out = []
    for g, c in x.terms.items():
        out.append((canonicalize([mapping.get(col, col) for col in g.colors], g.edges), c))
    return GraphSeries.make(out, x.e_max, x.v_max)
