"""Exact polynomial algebra: rationals, polynomials, roots and systems."""

from .bipoly import BiPoly
from .factor import factor_in_y, gcd_bi, squarefree_bi
from .points import AlgebraicPoint2D, RatFunc, dedup_points
from .roots import AlgebraicNumber, isolate_real_roots, rational_roots, refine
from .solve import SystemSolution, solve_system
from .subres import bareiss_det, discriminant_y, resultant_y, sres_y, subresultant
from .surd import QuadSurd
from .unipoly import UniPoly, gcd, squarefree_decomposition, squarefree_part

__all__ = [
    "AlgebraicNumber", "AlgebraicPoint2D", "BiPoly", "QuadSurd", "RatFunc",
    "SystemSolution", "UniPoly", "bareiss_det", "dedup_points", "discriminant_y",
    "factor_in_y", "gcd", "gcd_bi", "isolate_real_roots", "rational_roots",
    "refine", "resultant_y", "solve_system", "squarefree_bi",
    "squarefree_decomposition", "squarefree_part", "sres_y", "subresultant",
]
