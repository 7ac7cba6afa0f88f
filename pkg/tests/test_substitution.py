import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from torus_kontsevich.graphs import canonicalize, multi_edge, path, vertex
from torus_kontsevich.recursion import DecoratedTree, TorusParams, vertex_prefactor
from torus_kontsevich.series import series_f
from torus_kontsevich.substitution import (
    brute_force_glue,
    brute_force_vertex,
    complete_homogeneous,
    leg_profile_of_tree,
    oracle_report,
    polar_correction,
    reduce_term,
    resolve,
    settle_prefactor,
    substitution_terms,
    symbolic_tree_profile,
)

DIM = 3
vec = st.tuples(*[st.integers(-2, 2)] * DIM)
point = st.tuples(*[st.integers(-50, 50)] * DIM)


def dot(u, pt):
    return sum(a * b for a, b in zip(u, pt))


def safe_point(classes, pt):
    # every difference of distinct classes must be nonzero at pt
    distinct = sorted(set(classes))
    return all(dot(tuple(a - b for a, b in zip(u, w)), pt) != 0 for i, u in enumerate(distinct) for w in distinct[i + 1 :])


@given(st.lists(vec, min_size=1, max_size=4), st.integers(0, 4), point)
@settings(max_examples=200)
def test_reduction_matches_complete_homogeneous(classes, extra, pt):
    assume(safe_point(classes, pt))
    n = len(classes) + extra
    total = sum((f.evaluate(pt) for f in reduce_term(classes, n)), Fraction(0))
    assert total == n * complete_homogeneous(classes, extra, pt)


@given(st.lists(vec, min_size=1, max_size=4), st.integers(0, 3), point, st.integers(0, 10**6))
@settings(max_examples=100)
def test_reduction_order_does_not_matter(classes, extra, pt, seed):
    assume(safe_point(classes, pt))
    n = len(classes) + extra
    a = sum((f.evaluate(pt) for f in reduce_term(classes, n)), Fraction(0))
    b = sum((f.evaluate(pt) for f in reduce_term(classes, n, random.Random(seed))), Fraction(0))
    assert a == b


@given(st.lists(vec, min_size=1, max_size=3), st.integers(0, 3), point)
@settings(max_examples=100, deadline=None)
def test_cyclic_gluing_is_complete_homogeneous(classes, extra, pt):
    n = len(classes) + extra
    assert brute_force_vertex(classes, n, pt) == n * complete_homogeneous(classes, extra, pt)


def test_reduction_terminal_fragments():
    frags = reduce_term([(1, 0)] * 3, 5)
    assert len(frags) == 1
    f = frags[0]
    assert f.p == 0 and f.power == 2
    assert f.coeff == 5 * 6  # n * C(m + k - 1, k - 1) with m = 2, k = 3


def test_reduction_below_valence_is_empty():
    assert reduce_term([(1,), (2,)], 1) == []


def test_resolution_counts():
    star = canonicalize("cabb", [(0, 1), (0, 2), (0, 3)])
    assert len(resolve(star)) == factorial(3 - 1)
    assert len(resolve(path("a", "b", "c"))) == 1
    assert len(resolve(multi_edge("a", "b", 3))) == 4


@pytest.mark.parametrize(
    "g",
    [multi_edge("a", "b", 2), multi_edge("a", "b", 3), canonicalize("abc", [(0, 1), (1, 2), (0, 2)])],
)
def test_betti_number(g):
    for d in resolve(g):
        assert d.betti == g.n_edges + 1


@pytest.mark.parametrize("g", [vertex("a"), path("a", "b"), path("a", "b", "a"), canonicalize("cabb", [(0, 1), (0, 2), (0, 3)])])
def test_tree_arcs_carry_the_circle_class(g):
    # on a tree every arc of a circle is homologous to the whole circle
    for d in resolve(g):
        assert d.betti == g.n_vertices
        for arcs in d.arc_classes:
            assert len(set(arcs)) == 1


@pytest.mark.parametrize(
    "g,deg",
    [
        (multi_edge("a", "b", 2), -2),
        (multi_edge("a", "b", 3), -4),
        (canonicalize("abc", [(0, 1), (1, 2), (0, 2)]), -3),
    ],
)
def test_bprime_degree_negative_off_trees(g, deg):
    degs = {t.bprime_degree for t in substitution_terms(g)}
    assert degs == {deg}


@pytest.mark.parametrize("orders", [(3, 3), (4, 5), (6, 3)])
def test_bprime_degree_independent_of_wheel_order(orders):
    g = multi_edge("a", "b", 2)
    assert max(t.bprime_degree for t in substitution_terms(g, orders)) <= -1


def test_trees_stay_in_degree_zero():
    g = canonicalize("cabb", [(0, 1), (0, 2), (0, 3)])
    assert all(t.p_list == (0, 0, 0, 0) for t in substitution_terms(g))


def test_polar_correction():
    s = polar_correction(3, 2)
    assert s.min_exp == -3 and s[-3] == -1
    assert polar_correction(0, 2).is_zero()


@pytest.mark.parametrize("n", [2, 3, 6])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_prefactor_fixed_by_oracle(n, k):
    assert settle_prefactor(n, k, 10) * Fraction(1, 4) == vertex_prefactor(n, k)


def test_missing_prefactor_leaves_a_pole():
    t = DecoratedTree.from_tree(path("a", "b"), 1, TorusParams(2, 3))
    with pytest.raises(ValueError, match="pole"):
        leg_profile_of_tree(t, 6, with_polar=False)


@pytest.mark.parametrize("g", [vertex("a"), path("a", "b"), path("a", "b", "a"), path("a", "b", "c")])
def test_brute_force_matches_resolutions(g):
    P = TorusParams(2, 3)
    series = {c: series_f(P.scale(c), 14) for c in "abc"}
    assert brute_force_glue(g, series, 10) == symbolic_tree_profile(g, series, 10)


def test_oracle_report_verdicts():
    rep = oracle_report(TorusParams(2, 5), [vertex("b"), path("a", "c"), path("b", "a", "b")], 10)
    assert [r["verdict"] for r in rep] == [True, True, True]
    assert {"graph", "brute_force", "symbolic", "total_degree"} <= set(rep[0])


def test_brute_force_limits():
    series = {c: series_f(2, 14) for c in "ab"}
    with pytest.raises(ValueError):
        brute_force_glue(multi_edge("a", "b", 2), series, 6)
