"""Verification suites.  Each suite returns a list of CheckResult; nothing here raises on a mismatch."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .covering import LiftContext, lift_r_series, lift_report, proportionality, taylor_at_zero
from .displays import DISPLAY_EDGES, DISPLAYS, convert
from .graphs import (
    GraphSeries,
    canonicalize,
    glue_log,
    glue_product,
    graph_exp,
    graph_log,
    multi_edge,
    path,
    vertex,
)
from .ratfunc import alexander_torus, apply_D, h_function, peval
from .recursion import TorusParams, recursion_sequence, x_pq_limit, y_rat, hair_valence_zero, vertex_prefactor
from .series import LaurentSeries, hair_expand, series_f
from .substitution import oracle_report, settle_prefactor, substitution_terms


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "seconds": round(self.seconds, 3), "detail": self.detail}


def _timed(name, fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported not raised
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckResult(name, bool(passed), detail, time.perf_counter() - t0)


def _fr(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


# --------------------------------------------------------------------------
# independent oracles


def bernoulli(n: int) -> list[Fraction]:
    """B_0..B_n with B_1 = -1/2, from sum_{k<m+1} C(m+1,k) B_k = 0."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


def f_oracle(order: int) -> LaurentSeries:
    """f(x) = sum_k B_2k x^2k / (4k (2k)!)."""
    B = bernoulli(order)
    return LaurentSeries.from_dict(
        {2 * k: B[2 * k] / (4 * k * factorial(2 * k)) for k in range(1, order // 2 + 1)}, order
    )


def h_oracle(order: int) -> LaurentSeries:
    """(e^x+1)/(e^x-1) = 1 + (2/x) sum_n B_n x^n / n!."""
    B = bernoulli(order + 1)
    terms = {n - 1: 2 * B[n] / factorial(n) for n in range(order + 2)}
    terms[0] = terms.get(0, Fraction(0)) + 1
    return LaurentSeries.from_dict(terms, order)


def log_alexander_oracle(p: int, q: int, order: int) -> LaurentSeries:
    """-1/2 log(e^{-dx/2} Delta(e^x)) via the product of sinh ratios.

    Delta(e^x) e^{-dx/2} = sinh(pqx/2) sinh(x/2) / (sinh(px/2) sinh(qx/2)), and
    log(sinh(nx/2)/(nx/2)) = 2 f(nx), so the log is 2(f(pqx)+f(x)-f(px)-f(qx)).
    Built from :func:`f_oracle`; does not touch the polynomial for Delta.
    """
    f = f_oracle(order)
    total = f.scale_variable(p * q) + f - f.scale_variable(p) - f.scale_variable(q)
    return total * Fraction(-1)


def alexander_log_direct(p: int, q: int, order: int) -> LaurentSeries:
    """Same quantity from the Alexander polynomial, expanded coefficient-wise in x."""
    delta = alexander_torus(p, q)
    if delta.den != (1,):
        raise ArithmeticError("Alexander polynomial did not reduce to a polynomial")
    d = len(delta.num) - 1
    N = order + 2
    coeffs = [Fraction(0)] * (N + 1)
    for k, a in enumerate(delta.num):
        if a:
            e = Fraction(2 * k - d, 2)
            term = Fraction(1)
            for j in range(N + 1):
                coeffs[j] += a * term
                term = term * e / (j + 1)
    s = LaurentSeries.make(0, coeffs, N)
    if coeffs[0] != 1 or peval(delta.num, 1) != 1:
        raise ArithmeticError("Delta(1) != 1")
    return (s.log() * Fraction(-1, 2)).truncate(order)


# --------------------------------------------------------------------------
# suites


def suite_series(params: TorusParams, order: int, **_) -> list[CheckResult]:
    def f14():
        got = series_f(1, 4)
        want = LaurentSeries.from_dict({2: Fraction(1, 48), 4: Fraction(-1, 5760)}, 4)
        return got == want and got == f_oracle(4), {"series_f(1,4)": str(got)}

    def h3():
        got = hair_expand(h_function(1), 3)
        want = LaurentSeries.from_dict({-1: Fraction(2), 1: Fraction(1, 6), 3: Fraction(-1, 360)}, 3)
        return got == want and got == h_oracle(3), {"hair(h,3)": str(got)}

    def f_order():
        return series_f(1, order) == f_oracle(order), {"order": order}

    def h_order():
        ok = all(hair_expand(h_function(n), order) == h_oracle(order).scale_variable(n) for n in (1, 2, 3, 6))
        return ok, {"order": order, "n": [1, 2, 3, 6]}

    return [
        _timed("series_f(1,4)", f14),
        _timed("hair_expand(h,3)", h3),
        _timed(f"series_f vs Bernoulli oracle to order {order}", f_order),
        _timed(f"hair h(t^n) vs Bernoulli oracle to order {order}", h_order),
    ]


PRODUCT_EXAMPLE = (
    (("a",), (), Fraction(1)),
    (("b",), (), Fraction(1)),
    (("a", "b"), ((0, 1),), Fraction(1)),
    (("a", "b"), ((0, 1), (0, 1)), Fraction(1)),
    (("a", "b", "a"), ((0, 1), (1, 2)), Fraction(1, 2)),
    (("b", "a", "b"), ((0, 1), (1, 2)), Fraction(1, 2)),
    (("a", "b"), ((0, 1), (0, 1), (0, 1)), Fraction(1)),
)


def product_example() -> tuple[bool, dict]:
    e, v = 3, 4
    ea = graph_exp(GraphSeries.single(vertex("a"), e, v))
    eb = graph_exp(GraphSeries.single(vertex("b"), e, v))
    logged = graph_log(glue_product(ea, eb, {"a"}, {"b"}))
    direct = glue_log(GraphSeries.single(vertex("a"), e), GraphSeries.single(vertex("b"), e), {"a"}, {"b"})
    rows, ok = [], True
    for colors, edges, want in PRODUCT_EXAMPLE:
        g = canonicalize(colors, edges)
        got, got2 = logged.coeff(g), direct.coeff(g)
        ok &= got == want and got2 == want
        rows.append({"graph": repr(g), "expected": _fr(want), "via_exp_log": _fr(got), "direct": _fr(got2)})
    return ok, {"coefficients": rows}


def suite_worked_examples(params: TorusParams, pairs=None, **_) -> list[CheckResult]:
    out = [_timed("product example exp(a).exp(b)", product_example)]
    pairs = pairs or [(params.p, params.q)]
    for p, q in pairs:
        P = TorusParams(p, q, max(params.e_max, DISPLAY_EDGES))

        def disp(P=P, p=p, q=q):
            xs, pqs = recursion_sequence(P, 2)
            computed = {
                "omega^-1_pq": pqs[0],
                "omega^1": xs[1],
                "omega^2": xs[2],
                "X_pq": x_pq_limit(P),
            }
            detail, ok = {}, True
            for name, terms in DISPLAYS.items():
                got = computed[name].truncate(DISPLAY_EDGES)
                want = convert(terms, p, q)
                same = got == want
                ok &= same
                detail[name] = {"match": same, "terms": len(want)}
                if not same:
                    detail[name]["difference"] = (got - want).to_json()
            return ok, detail

        out.append(_timed(f"displays through {DISPLAY_EDGES} edges at (p,q)=({p},{q})", disp))
    return out


def suite_convergence(params: TorusParams, **_) -> list[CheckResult]:
    e = params.e_max
    P = params

    def run():
        cap = e + 3
        xs, pqs = recursion_sequence(P, cap)
        # pqs[i] = X^{i-1}_pq
        rows, ok = [], True
        for n in range(0, e + 1):
            diff = pqs[n + 2] - pqs[n + 1]
            m = diff.min_edges()
            good = m is None or m >= n
            ok &= good
            rows.append({"n": n, "min_edges": m, "ok": good})
        stable_at = next((i for i in range(1, len(pqs)) if pqs[i] == pqs[i - 1]), None)
        # index i means X^{i-1}_pq == X^{i-2}_pq, reached after i-1 recursion steps
        steps = None if stable_at is None else stable_at - 1
        ok &= steps is not None and steps <= cap
        limit = x_pq_limit(P)
        ok &= limit == pqs[0] - pqs[-1]
        return ok, {"e_max": e, "differences": rows, "stabilized_after_steps": steps, "cap": cap, "terms": len(limit)}

    return [_timed(f"convergence at e_max={e}", run)]


def suite_one_loop(params: TorusParams, order: int, pairs=None, **_) -> list[CheckResult]:
    out = []
    pairs = pairs or [(params.p, params.q)]
    for p, q in pairs:

        def run(p=p, q=q):
            P = TorusParams(p, q, params.e_max)
            lhs = hair_valence_zero(y_rat(P), order)
            oracle = log_alexander_oracle(p, q, order)
            direct = alexander_log_direct(p, q, order)
            rhs = series_f(1, order) + oracle
            return lhs == rhs and oracle == direct, {
                "order": order,
                "hair": str(lhs),
                "f + Wh": str(rhs),
                "oracles_agree": oracle == direct,
            }

        out.append(_timed(f"one-loop identity at (p,q)=({p},{q})", run))
    return out


def degree_sources():
    loops = {
        "a=b": multi_edge("a", "b", 2),
        "a≡b": multi_edge("a", "b", 3),
        "triangle": canonicalize("abc", [(0, 1), (1, 2), (0, 2)]),
    }
    trees = {
        "•a": vertex("a"),
        "a-b": path("a", "b"),
        "a-b-a": path("a", "b", "a"),
        "a-b-c": path("a", "b", "c"),
        "star": canonicalize("cabb", [(0, 1), (0, 2), (0, 3)]),
    }
    return loops, trees


def suite_degree(params: TorusParams, **_) -> list[CheckResult]:
    loops, trees = degree_sources()
    out = []
    for name, g in loops.items():

        def run(g=g):
            degs = [t.bprime_degree for t in substitution_terms(g)]
            return max(degs) <= -1, {"terms": len(degs), "max_degree": max(degs), "min_degree": min(degs)}

        out.append(_timed(f"B' degree <= -1 for {name}", run))
    for name, g in trees.items():

        def run(g=g):
            terms = substitution_terms(g)
            deg0 = [t for t in terms if t.bprime_degree == 0]
            ok = all(set(t.p_list) <= {0} for t in deg0) and all(t.bprime_degree == 0 for t in terms)
            return ok, {"terms": len(terms), "degree_zero_terms": len(deg0)}

        out.append(_timed(f"tree {name}: degree-0 terms have all p_i = 0", run))
    return out


def suite_substitution(params: TorusParams, total_degree: int = 10, **_) -> list[CheckResult]:
    graphs = [vertex("a"), path("a", "b"), path("a", "b", "a")]

    def oracle():
        rep = oracle_report(params, graphs, total_degree)
        return all(r["verdict"] for r in rep), {"reports": rep}

    def normalization():
        rows, ok = [], True
        for col in ("a", "b", "c"):
            n = params.scale(col)
            for k in (1, 2, 3):
                lam = settle_prefactor(n, k, total_degree)
                want = vertex_prefactor(n, k)
                ok &= lam * Fraction(1, 4) == want
                rows.append({"scale": n, "valence": k, "fitted": _fr(lam * Fraction(1, 4)), "used": _fr(want)})
        return ok, {"prefactors": rows}

    return [
        _timed(f"brute-force gluing vs symbolic substitution to degree {total_degree}", oracle),
        _timed("circle normalization n/4 fixed by the oracle", normalization),
    ]


def suite_lift(params: TorusParams, r_values=(5, 7), depth: int = 40, **_) -> list[CheckResult]:
    def trees():
        ts = [t for t in y_rat(params) if 2 <= t.n_vertices <= 3]
        rep = lift_report(ts, r_values, depth)
        return bool(rep) and all(r["verdict"] for r in rep), {"checked": len(rep), "reports": rep}

    def functions():
        rows, ok = [], True
        for r in r_values:
            ctx = LiftContext(r, depth)
            for n in (2, 3, 6):
                for i in range(4):
                    g = apply_D(h_function(n), i)
                    lam = proportionality(lift_r_series(g, ctx), taylor_at_zero(g, depth))
                    good = lam == Fraction(r) ** i
                    ok &= good
                    rows.append({"r": r, "n": n, "i": i, "factor": None if lam is None else _fr(lam), "ok": good})
        return ok, {"depth": depth, "identities": rows}

    return [
        _timed(f"lift_r_tree = pi_r on trees of Y^rat({params.p},{params.q}) with <= 3 vertices", trees),
        _timed("lift_r D^i h(t^n) = r^i D^i h(t^n)", functions),
    ]


SUITES = {
    "series": suite_series,
    "paper-examples": suite_worked_examples,
    "convergence": suite_convergence,
    "one-loop": suite_one_loop,
    "degree": suite_degree,
    "substitution": suite_substitution,
    "lift": suite_lift,
}


def run_suites(names, params: TorusParams, order: int = 12, r_values=(5, 7), pairs=None) -> dict:
    report = {"p": params.p, "q": params.q, "e_max": params.e_max, "order": order, "suites": {}}
    for name in names:
        results = SUITES[name](params, order=order, r_values=tuple(r_values), pairs=pairs)
        report["suites"][name] = [r.to_json() for r in results]
    report["passed"] = all(r["passed"] for rs in report["suites"].values() for r in rs)
    return report
