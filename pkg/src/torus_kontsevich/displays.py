"""Boxed notation for low-degree gluing graphs, and its conversion to graph series.

A box holds an integer label standing for a vertex color, or a signed sum of
them (``p+q-pq``) that expands multilinearly.  Edges are unoriented (``-``) or
arrows (``>`` from the first to the second vertex).  Each diagram is divided,
for every vertex, by the vertex's scale raised to the number of edge ends at
that vertex which are not arrowheads.  For example ``pq -> p <- q`` stands for
1/(p q^2) times the path c-a-b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .graphs import GraphSeries, canonicalize

BOXES = {
    "p": (("a", 1),),
    "q": (("b", 1),),
    "pq": (("c", 1),),
    "1": (("*", 1),),
    "p+q-pq": (("a", 1), ("b", 1), ("c", -1)),
}


@dataclass(frozen=True)
class BoxedTerm:
    coeff: Fraction
    boxes: tuple[str, ...]
    edges: tuple[tuple[int, int, str], ...] = ()

    def expand(self, p: int, q: int) -> list[tuple]:
        scale = {"a": p, "b": q, "c": p * q, "*": 1}
        tails = [0] * len(self.boxes)
        for i, j, kind in self.edges:
            tails[i] += 1
            if kind == "-":
                tails[j] += 1
        out = []
        for choice in product(*(BOXES[b] for b in self.boxes)):
            colors = [c for c, _ in choice]
            coeff = Fraction(self.coeff)
            for (col, sign), n in zip(choice, tails):
                coeff *= Fraction(sign, scale[col] ** n)
            out.append((canonicalize(colors, [(i, j) for i, j, _ in self.edges]), coeff))
        return out


def T(coeff, boxes, edges=()) -> BoxedTerm:
    return BoxedTerm(Fraction(coeff), tuple(boxes), tuple(edges))


S = "p+q-pq"
half = Fraction(1, 2)

OMEGA_MINUS_ONE_PQ = (
    T(1, ["p"]),
    T(1, ["q"]),
    T(1, ["p", "q"], [(0, 1, "-")]),
    T(1, ["p", "q"], [(0, 1, "-"), (0, 1, "-")]),
    T(half, ["p", "q", "p"], [(0, 1, "-"), (1, 2, "-")]),
    T(half, ["q", "p", "q"], [(0, 1, "-"), (1, 2, "-")]),
)

OMEGA_1 = (
    T(1, ["1"]),
    T(1, [S, "1"], [(1, 0, ">")]),
    T(1, [S, "1"], [(1, 0, ">"), (1, 0, ">")]),
    T(half, ["1", S, "1"], [(0, 1, ">"), (2, 1, ">")]),
    T(half, [S, "1", S], [(1, 0, ">"), (1, 2, ">")]),
    T(1, ["1", "p", "q"], [(0, 1, ">"), (1, 2, "-")]),
    T(1, ["1", "q", "p"], [(0, 1, ">"), (1, 2, "-")]),
)

OMEGA_2 = OMEGA_1 + (
    T(-1, [S, "pq", "1"], [(1, 0, ">"), (2, 1, ">")]),
    T(-1, ["1", S, "pq"], [(0, 1, ">"), (2, 1, ">")]),
)

X_PQ = (
    T(1, ["p"]),
    T(1, ["q"]),
    T(-1, ["pq"]),
    T(1, ["p", "q"], [(0, 1, "-")]),
    T(-1, [S, "pq"], [(1, 0, ">")]),
    T(1, ["p", "q"], [(0, 1, "-"), (0, 1, "-")]),
    T(-1, [S, "pq"], [(1, 0, ">"), (1, 0, ">")]),
    T(half, ["p", "q", "p"], [(0, 1, "-"), (1, 2, "-")]),
    T(half, ["q", "p", "q"], [(0, 1, "-"), (1, 2, "-")]),
    T(half, ["pq", S, "pq"], [(0, 1, ">"), (2, 1, ">")]),
    T(-half, [S, "pq", S], [(1, 0, ">"), (1, 2, ">")]),
    T(-1, ["pq", "p", "q"], [(0, 1, ">"), (1, 2, "-")]),
    T(-1, ["pq", "q", "p"], [(0, 1, ">"), (1, 2, "-")]),
    T(1, [S, "pq", "pq"], [(1, 0, ">"), (2, 1, ">")]),
)

# each listed expansion is complete through two edges
DISPLAYS = {
    "omega^-1_pq": OMEGA_MINUS_ONE_PQ,
    "omega^1": OMEGA_1,
    "omega^2": OMEGA_2,
    "X_pq": X_PQ,
}
DISPLAY_EDGES = 2


def convert(terms, p: int, q: int, e_max: int = DISPLAY_EDGES) -> GraphSeries:
    items = []
    for t in terms:
        items.extend(t.expand(p, q))
    return GraphSeries.make(items, e_max)
