"""Exact rational linear algebra, LP and cone operations."""

from .cone import (
    RationalCone,
    canonical_equations,
    cone_dim,
    fm_project,
    implicit_equalities,
    interior_point,
    lineality_dim,
    reduce_equations,
    remove_redundant,
)
from .ilp import IntegerProgramError, min_sum_integer_point
from .linalg import LinearSolution, det_bareiss, dot, nullspace, primitive, rank, rref, solve_linear
from .lp import in_cone, linprog

__all__ = [
    "RationalCone", "canonical_equations", "cone_dim", "fm_project", "implicit_equalities",
    "interior_point", "lineality_dim", "reduce_equations", "remove_redundant",
    "IntegerProgramError", "min_sum_integer_point", "LinearSolution", "det_bareiss", "dot",
    "nullspace", "primitive", "rank", "rref", "solve_linear", "in_cone", "linprog",
]
