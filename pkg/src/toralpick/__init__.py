"""Toral/atoral classification, rational inner functions, and certified
Pick interpolation on the bidisk."""

from .scalars import GaussianRational
from .poly import MultiPoly, SymmetryResult, NonDivisibilityError
from .parsing import parse_poly, format_poly, PolyParseError
from .factor import (
    FactorizationError,
    factor_multipoly,
    gcd_multipoly,
    resultant_multipoly,
)
from .ball import ComplexBall

__all__ = [
    "GaussianRational",
    "MultiPoly",
    "SymmetryResult",
    "NonDivisibilityError",
    "parse_poly",
    "format_poly",
    "PolyParseError",
    "FactorizationError",
    "factor_multipoly",
    "gcd_multipoly",
    "resultant_multipoly",
    "ComplexBall",
]

__version__ = "0.1.0"
