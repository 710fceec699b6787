"""Optimal angular resolution for face-symmetric planar drawings.

Typical use::

    from fsdraw import parse_drawing, optimize
    result = optimize(parse_drawing(text))
    result.lambda_star, result.output
"""

from .aux_graph import AuxGraph, build_aux_graph
from .fixtures import gen_fan, gen_grid, gen_polygon, gen_rhombus, gen_star
from .model import Drawing, DrawingError, ingest, parse_drawing, to_document
from .pipeline import Result, optimize
from .solver import Solution, bellman_ford, certify, solve_bisect, solve_exact
from .verify import check_drawing, measure_resolution, oracle_lambda

__all__ = [
    "AuxGraph",
    "Drawing",
    "DrawingError",
    "Result",
    "Solution",
    "bellman_ford",
    "build_aux_graph",
    "certify",
    "check_drawing",
    "gen_fan",
    "gen_grid",
    "gen_polygon",
    "gen_rhombus",
    "gen_star",
    "ingest",
    "measure_resolution",
    "optimize",
    "oracle_lambda",
    "parse_drawing",
    "solve_bisect",
    "solve_exact",
    "to_document",
]
