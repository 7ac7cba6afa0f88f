"""Release gate: one test per acceptance criterion, exact equality at the stated runtime bound."""

import time
from fractions import Fraction

import sympy as sp

from torus_kontsevich.checks import (
    PRODUCT_EXAMPLE,
    alexander_log_direct,
    log_alexander_oracle,
    product_example,
    suite_convergence,
    suite_degree,
    suite_lift,
    suite_worked_examples,
    suite_substitution,
)
from torus_kontsevich.graphs import GraphSeries, canonicalize, glue_product, graph_exp, vertex
from torus_kontsevich.ratfunc import h_function
from torus_kontsevich.recursion import TorusParams, hair_valence_zero, y_rat
from torus_kontsevich.series import LaurentSeries, hair_expand, series_f
from torus_kontsevich.substitution import settle_prefactor

x = sp.symbols("x")


def sympy_series(expr, order):
    """Exact Laurent coefficients of expr at x = 0 through x^order."""
    s = sp.series(expr, x, 0, order + 1).removeO()
    terms = {}
    for term in sp.Add.make_args(sp.expand(s)):
        c, e = term.as_coeff_exponent(x)
        terms[int(e)] = Fraction(int(sp.numer(c)), int(sp.denom(c)))
    return LaurentSeries.from_dict(terms, order)


def _failed(results):
    return [r.name for r in results if not r.passed]


def test_criterion_1_product_example(acceptance):
    t0 = time.perf_counter()
    ok, detail = product_example()
    # labeled oracle: each bipartite graph appears in exp(a).exp(b) with weight 1/|Aut|
    e, v = 3, 4
    prod = glue_product(
        graph_exp(GraphSeries.single(vertex("a"), e, v)),
        graph_exp(GraphSeries.single(vertex("b"), e, v)),
        {"a"},
        {"b"},
    )
    for colors, edges, _ in PRODUCT_EXAMPLE:
        g = canonicalize(colors, edges)
        ok &= prod.coeff(g) == Fraction(1, g.aut)
    seconds = time.perf_counter() - t0
    got = [row["direct"] for row in detail["coefficients"]]
    assert acceptance(1, "product example exp(a).exp(b)", ok, seconds, 1, f"coefficients {got}")
    assert got == ["1/1", "1/1", "1/1", "1/1", "1/2", "1/2", "1/1"]


def test_criterion_2_xpq_displays(acceptance):
    t0 = time.perf_counter()
    results = suite_worked_examples(TorusParams(2, 3, 3), pairs=[(2, 3), (2, 5)])[1:]
    seconds = time.perf_counter() - t0
    ok = not _failed(results) and len(results) == 2
    assert acceptance(2, "X_pq displays at (2,3) and (2,5), e_max=3", ok, seconds, 10), _failed(results)


def test_criterion_3_convergence(acceptance):
    t0 = time.perf_counter()
    (res,) = suite_convergence(TorusParams(2, 3, 4))
    seconds = time.perf_counter() - t0
    d = res.detail
    note = f"min edges of successive differences {[r['min_edges'] for r in d.get('differences', [])]}, stable after {d.get('stabilized_after_steps')} steps"
    assert acceptance(3, "convergence in loop degree at e_max=4", res.passed, seconds, 30, note), d


def test_criterion_4_one_loop(acceptance):
    t0 = time.perf_counter()
    ok = True
    for p, q in [(2, 3), (2, 5), (3, 4)]:
        lhs = hair_valence_zero(y_rat(TorusParams(p, q, 3)), 12)
        rhs = series_f(1, 12) + log_alexander_oracle(p, q, 12)
        ok &= lhs == rhs and alexander_log_direct(p, q, 12) == log_alexander_oracle(p, q, 12)
    seconds = time.perf_counter() - t0
    assert acceptance(4, "one-loop identity for (2,3), (2,5), (3,4) to order 12", ok, seconds, 5)


def test_criterion_4_symbolic_cross_check():
    # independent of the package: -1/2 log Delta(e^x) normalized, straight from a CAS
    p, q = 2, 3
    d = (p - 1) * (q - 1)
    t = sp.symbols("t")
    delta = sp.cancel((t ** (p * q) - 1) * (t - 1) / ((t**p - 1) * (t**q - 1)))
    expr = -sp.Rational(1, 2) * sp.log(sp.exp(-d * x / 2) * delta.subs(t, sp.exp(x)))
    assert sympy_series(expr, 8) == log_alexander_oracle(p, q, 8)


def test_criterion_5_degree(acceptance):
    t0 = time.perf_counter()
    results = suite_degree(TorusParams(2, 3, 3))
    seconds = time.perf_counter() - t0
    ok = not _failed(results)
    note = "; ".join(f"{r.name.split(' for ')[-1]} max {r.detail['max_degree']}" for r in results[:3] if "max_degree" in r.detail)
    assert acceptance(5, "B'-degree <= -1 off trees, p_i = 0 on trees", ok, seconds, 30, note), _failed(results)


def test_criterion_6_substitution_oracle(acceptance):
    t0 = time.perf_counter()
    results = suite_substitution(TorusParams(2, 3, 3), total_degree=10)
    # the valence-2 constant, read off the oracle at each scale
    lams = {n: settle_prefactor(n, 2, 10) for n in (2, 3, 6)}
    seconds = time.perf_counter() - t0
    ok = not _failed(results) and all(lam == n for n, lam in lams.items())
    note = "valence-2 constant n/4 at n=" + ",".join(str(n) for n in lams)
    assert acceptance(6, "brute-force gluing = symbolic substitution to degree 10", ok, seconds, 120, note), _failed(results)


def test_criterion_7_lift(acceptance):
    t0 = time.perf_counter()
    results = suite_lift(TorusParams(2, 3, 3), r_values=(5, 7), depth=40)
    seconds = time.perf_counter() - t0
    ok = not _failed(results) and results[0].detail["checked"] > 0
    note = f"{results[0].detail.get('checked')} tree/r pairs"
    assert acceptance(7, "lift_r = pi_r for r in {5,7}, depth 40", ok, seconds, 30, note), _failed(results)


def test_criterion_8_series(acceptance):
    t0 = time.perf_counter()
    f = series_f(1, 4)
    hh = hair_expand(h_function(1), 3)
    ok = f == LaurentSeries.from_dict({2: Fraction(1, 48), 4: Fraction(-1, 5760)}, 4)
    ok &= hh == LaurentSeries.from_dict({-1: 2, 1: Fraction(1, 6), 3: Fraction(-1, 360)}, 3)
    seconds = time.perf_counter() - t0
    # CAS oracle, outside the timed region
    ok &= f == sympy_series(sp.log(sp.sinh(x / 2) / (x / 2)) / 2, 4)
    ok &= hh == sympy_series((sp.exp(x) + 1) / (sp.exp(x) - 1), 3)
    assert acceptance(8, "series_f(1,4) and hair_expand(h,3)", ok, seconds, 1)
