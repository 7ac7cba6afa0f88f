"""Text and LaTeX rendering of graph series and decorated trees."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .graphs import ColoredMultigraph, GraphSeries
from .recursion import DecoratedTree, VertexDecoration

TEXT_BOND = {1: "-", 2: "=", 3: "≡"}
TEX_BOND = {1: r"\!-\!", 2: r"\!=\!", 3: r"\!\equiv\!"}
TEX_COLOR = {"a": "p", "b": "q", "c": "pq", "*": "1"}


def _chain(g: ColoredMultigraph) -> list[int] | None:
    """Vertex order along g if its underlying simple graph is a path."""
    nb = g.neighbours()
    if not g.is_connected() or any(len(n) > 2 for n in nb):
        return None
    if g.n_vertices > 1 and len({frozenset(e) for e in g.edges}) != g.n_vertices - 1:
        return None
    ends = [v for v, n in enumerate(nb) if len(n) <= 1]
    order, prev = [ends[0]], None
    while len(order) < g.n_vertices:
        cur = order[-1]
        nxt = next(w for w in nb[cur] if w != prev)
        prev = cur
        order.append(nxt)
    return order


def _layout(g: ColoredMultigraph, label: Callable[[int], str], bond: dict, generic: Callable) -> str:
    order = _chain(g)
    if order is None:
        return generic(g, label)
    nb = g.neighbours()
    parts = [label(order[0])]
    for u, v in zip(order, order[1:]):
        k = nb[u][v]
        parts.append(bond.get(k, f"-{k}-"))
        parts.append(label(v))
    return "".join(parts)


def _generic_text(g, label):
    verts = " ".join(f"{i}:{label(i)}" for i in range(g.n_vertices))
    edges = " ".join(f"{i}-{j}" for i, j in g.edges)
    return f"{{{verts} | {edges}}}"


def _generic_tex(g, label):
    verts = ",".join(f"{label(i)}_{{{i}}}" for i in range(g.n_vertices))
    edges = ",".join(f"{i}{j}" for i, j in g.edges)
    return rf"\Gamma\left[{verts}\;\middle|\;{edges}\right]"


def graph_text(g: ColoredMultigraph) -> str:
    if g.n_vertices == 1:
        return "•" + g.colors[0]
    return _layout(g, lambda i: g.colors[i], TEXT_BOND, _generic_text)


def graph_tex(g: ColoredMultigraph) -> str:
    lab = lambda i: rf"\bullet_{{{TEX_COLOR.get(g.colors[i], g.colors[i])}}}"
    return _layout(g, lab, TEX_BOND, _generic_tex)


def _signed(c: Fraction) -> str:
    return ("+" if c > 0 else "-") + str(abs(c))


def _tex_coeff(c: Fraction) -> str:
    sign = "+" if c > 0 else "-"
    a = abs(c)
    if a == 1:
        return sign
    if a.denominator == 1:
        return f"{sign}{a.numerator}"
    return rf"{sign}\tfrac{{{a.numerator}}}{{{a.denominator}}}"


def series_text(x: GraphSeries) -> str:
    return "\n".join(f"{_signed(c):>8}  {graph_text(g)}" for g, c in x.sorted_terms())


def series_tex_lines(x: GraphSeries) -> list[str]:
    return [f"{_tex_coeff(c)}\\,{graph_tex(g)}" for g, c in x.sorted_terms()]


def decoration_text(v: VertexDecoration) -> str:
    if v.valence == 0:
        return f"f({v.scale}h)"
    d = "" if v.valence == 1 else f"D^{v.valence - 1} "
    return f"{v.prefactor} {d}h(t^{v.scale})"


def decoration_tex(v: VertexDecoration) -> str:
    if v.valence == 0:
        return f"f({v.scale}h)"
    d = "" if v.valence == 1 else f"D^{{{v.valence - 1}}}"
    p = v.prefactor
    pre = str(p.numerator) if p.denominator == 1 else rf"\tfrac{{{p.numerator}}}{{{p.denominator}}}"
    return rf"{pre}{d}h(t^{{{v.scale}}})"


def tree_text(t: DecoratedTree) -> str:
    if t.n_vertices == 1:
        return decoration_text(t.vertices[0])
    return _layout(t.tree, lambda i: f"[{decoration_text(t.vertices[i])}]", TEXT_BOND, _generic_text)


def tree_tex(t: DecoratedTree) -> str:
    if t.n_vertices == 1:
        return decoration_tex(t.vertices[0])
    lab = lambda i: rf"\left[{decoration_tex(t.vertices[i])}\right]"
    return _layout(t.tree, lab, TEX_BOND, _generic_tex)


def trees_text(trees: list[DecoratedTree]) -> str:
    return "\n".join(f"{_signed(t.coefficient):>8}  {tree_text(t)}" for t in trees)


def tex_document(title: str, lines: list[str]) -> str:
    body = " \\\\\n".join(f"  &{ln}" for ln in lines) if lines else "  &0"
    return (
        "\\documentclass{article}\n"
        "\\usepackage{amsmath}\n"
        "\\allowdisplaybreaks\n"
        "\\begin{document}\n"
        f"\\section*{{{title}}}\n"
        "\\begin{align*}\n"
        f"{body}\n"
        "\\end{align*}\n"
        "\\end{document}\n"
    )


def trees_tex_lines(trees: list[DecoratedTree]) -> list[str]:
    return [f"{_tex_coeff(t.coefficient)}\\,{tree_tex(t)}" for t in trees]
