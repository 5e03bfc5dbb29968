"""Exact-input intersection curves of two quadric surfaces."""

from .errors import (BranchCountError, InconsistencyError, ParseError, QuadintError,
                     UnsupportedCaseError)
from .io import parse_document, read_input
from .pipeline import IntersectionResult, discretize, intersect, residual
from .quadric import Quadric

__all__ = [
    "BranchCountError",
    "InconsistencyError",
    "IntersectionResult",
    "ParseError",
    "Quadric",
    "QuadintError",
    "UnsupportedCaseError",
    "discretize",
    "intersect",
    "parse_document",
    "read_input",
    "residual",
]
