"""
Algebra package for the Zhelobenko/Kostant verification engine
Contains the exact arithmetic substrate: rationals, polynomials, restricted
rational functions and fraction-free linear algebra
"""

from .exact import LinearFraction, NEG_INFINITY, Poly, format_scalar, parse_scalar, to_scalar
from .linear import ExactMatrix, nullspace, nullspace_of_rows, rank, row_reduce, same_span, span_rank

__all__ = [
    'Poly', 'LinearFraction', 'NEG_INFINITY', 'to_scalar', 'format_scalar', 'parse_scalar',
    'ExactMatrix', 'nullspace', 'nullspace_of_rows', 'rank', 'row_reduce', 'same_span', 'span_rank',
]
