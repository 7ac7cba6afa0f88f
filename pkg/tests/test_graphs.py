from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_kontsevich.graphs import (
    ColoredMultigraph,
    GraphSeries,
    canonicalize,
    glue_log,
    glue_product,
    graph_exp,
    graph_log,
    multi_edge,
    path,
    relabel,
    rescale,
    vertex,
)


@st.composite
def raw_graphs(draw, max_v=5, max_e=5, colors="ab"):
    n = draw(st.integers(1, max_v))
    cols = draw(st.lists(st.sampled_from(colors), min_size=n, max_size=n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=max_e)) if pairs else []
    return cols, edges


def _relabeled(cols, edges, perm):
    new_cols = [None] * len(cols)
    for i, c in enumerate(cols):
        new_cols[perm[i]] = c
    return new_cols, [(perm[i], perm[j]) for i, j in edges]


def _edge_multiset(cols, edges):
    return sorted(tuple(sorted(e)) for e in edges)


def brute_isomorphic(g1, g2) -> bool:
    c1, e1 = g1
    c2, e2 = g2
    if sorted(c1) != sorted(c2) or len(e1) != len(e2):
        return False
    target = _edge_multiset(c2, e2)
    for perm in permutations(range(len(c1))):
        cols, edges = _relabeled(c1, e1, perm)
        if cols == list(c2) and _edge_multiset(cols, edges) == target:
            return True
    return False


def brute_aut(cols, edges) -> int:
    """Color-preserving vertex permutations that fix the edge multiset.

    Parallel edges are not labeled, so a=b has a single automorphism.
    """
    base = _edge_multiset(cols, edges)
    count = 0
    for perm in permutations(range(len(cols))):
        c2, e2 = _relabeled(cols, edges, perm)
        if c2 == list(cols) and _edge_multiset(c2, e2) == base:
            count += 1
    return count


@given(raw_graphs(), st.data())
@settings(max_examples=150)
def test_canonical_form_is_invariant(g, data):
    cols, edges = g
    perm = data.draw(st.permutations(range(len(cols))))
    c2, e2 = _relabeled(cols, edges, perm)
    assert canonicalize(cols, edges) == canonicalize(c2, e2)


@given(raw_graphs(max_v=4, max_e=4), raw_graphs(max_v=4, max_e=4))
@settings(max_examples=150)
def test_canonical_equality_is_isomorphism(g1, g2):
    assert (canonicalize(*g1) == canonicalize(*g2)) == brute_isomorphic(g1, g2)


@given(raw_graphs())
@settings(max_examples=100)
def test_automorphism_count(g):
    assert canonicalize(*g).aut == brute_aut(*g)


def test_known_automorphisms():
    assert path("a", "b", "a").aut == 2
    assert multi_edge("a", "b", 2).aut == 1
    assert multi_edge("a", "b", 3).aut == 1
    assert multi_edge("a", "a", 2).aut == 2
    assert canonicalize("aaa", [(0, 1), (1, 2), (0, 2)]).aut == 6
    assert canonicalize("aa").aut == 2


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        canonicalize("a", [(0, 0)])


def test_tree_predicate():
    assert path("a", "b", "c").is_tree()
    assert not multi_edge("a", "b", 2).is_tree()
    assert not canonicalize("ab").is_tree()


def test_graph_json_round_trip():
    g = canonicalize("cabb", [(0, 1), (0, 2), (0, 3), (2, 3)])
    assert ColoredMultigraph.from_json(g.to_json()) == g


def test_labeled_product_oracle():
    # each graph with all edges a-b occurs in exp(a).exp(b) with weight 1/|Aut|
    e, v = 3, 4
    prod = glue_product(
        graph_exp(GraphSeries.single(vertex("a"), e, v)),
        graph_exp(GraphSeries.single(vertex("b"), e, v)),
        {"a"},
        {"b"},
    )
    assert len(prod) > 20
    for g, c in prod:
        assert all({g.colors[i], g.colors[j]} == {"a", "b"} for i, j in g.edges)
        assert c == Fraction(1, g.aut)


def test_glue_log_is_connected_part():
    e, v = 3, 5
    a = GraphSeries.single(vertex("a"), e, v)
    b = GraphSeries.single(vertex("b"), e, v) + GraphSeries.single(path("b", "c"), e, v, Fraction(1, 3))
    via_exp = graph_log(glue_product(graph_exp(a), graph_exp(b), {"a"}, {"b"})).truncate(v_max=None)
    direct = glue_log(a, b, {"a"}, {"b"})
    small = lambda s: {g: c for g, c in s if g.n_vertices <= v}
    assert small(via_exp) == small(direct)
    assert direct.is_connected


@st.composite
def connected_series(draw):
    items = []
    for g in draw(st.lists(st.sampled_from([vertex("a"), vertex("b"), path("a", "b"), multi_edge("a", "b", 2), path("a", "b", "a")]), max_size=4, unique=True)):
        items.append((g, draw(st.fractions(min_value=-2, max_value=2, max_denominator=5))))
    return GraphSeries.make(items, 3, 4)


@given(connected_series())
@settings(max_examples=30, deadline=None)
def test_exp_log_round_trip(x):
    assert graph_log(graph_exp(x)) == x


def test_exp_needs_vertex_budget():
    with pytest.raises(ValueError):
        graph_exp(GraphSeries.single(vertex("a"), 2))


@given(st.integers(-4, 4).filter(bool), st.integers(-4, 4).filter(bool))
def test_rescale_composes(r, s):
    x = glue_log(GraphSeries.single(vertex("a"), 3), GraphSeries.single(vertex("b"), 3), {"a"}, {"b"})
    assert rescale(rescale(x, "a", r), "a", s) == rescale(x, "a", r * s)
    assert rescale(rescale(x, "a", r), "b", s) == rescale(rescale(x, "b", s), "a", r)


def test_rescale_counts_valence():
    x = GraphSeries.single(path("a", "b", "a"), 2)
    assert rescale(x, "a", 2).coeff(path("a", "b", "a")) == Fraction(1, 4)
    assert rescale(x, "b", 2).coeff(path("a", "b", "a")) == Fraction(1, 4)


def test_relabel_merges_terms():
    x = GraphSeries.make([(vertex("a"), 1), (vertex("b"), 2)], 1)
    assert relabel(x, {"a": "b"}) == GraphSeries.single(vertex("b"), 1, coeff=3)


def test_truncation_drops_high_degree():
    x = GraphSeries.make([(multi_edge("a", "b", 3), 1), (vertex("a"), 1)], 2)
    assert len(x) == 1


def test_series_json_round_trip():
    x = glue_log(GraphSeries.single(vertex("a"), 3), GraphSeries.single(vertex("b"), 3), {"a"}, {"b"})
    assert GraphSeries.from_json(x.to_json(), 3) == x


def test_glue_sets_must_be_disjoint():
    x = GraphSeries.single(vertex("a"), 2)
    with pytest.raises(ValueError):
        glue_log(x, x, {"a"}, {"a"})
