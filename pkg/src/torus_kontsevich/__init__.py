"""Exact rational, unwheeled Kontsevich integral of torus knots as bubble-tree series."""

from .covering import LiftContext, lift_r_series, lift_r_tree, pi_r
from .graphs import (
    ColoredMultigraph,
    GraphSeries,
    canonicalize,
    glue_log,
    glue_product,
    graph_exp,
    graph_log,
    relabel,
    rescale,
)
from .ratfunc import RationalFunction, alexander_torus, apply_D, h_function
from .recursion import DecoratedTree, TorusParams, x_pq_limit, y_rat
from .series import LaurentSeries, hair_expand, series_f, wh_series

__all__ = [
    "ColoredMultigraph",
    "DecoratedTree",
    "GraphSeries",
    "LaurentSeries",
    "LiftContext",
    "RationalFunction",
    "TorusParams",
    "alexander_torus",
    "apply_D",
    "canonicalize",
    "glue_log",
    "glue_product",
    "graph_exp",
    "graph_log",
    "h_function",
    "hair_expand",
    "lift_r_series",
    "lift_r_tree",
    "pi_r",
    "relabel",
    "rescale",
    "series_f",
    "wh_series",
    "x_pq_limit",
    "y_rat",
]
