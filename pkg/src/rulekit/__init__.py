"""Ruled surfaces from their fundamental invariants, in relative and affine differential geometry."""

__version__ = "0.1.0"

from .errors import (AlphaQuarter, ConoidalSurface, ConsistencyError, CylindricalRuling,
                     DomainError, ExpressionSyntaxError, GeometryError, InputError,
                     NonDifferentiable, RulekitError, SingularSlope, TorsalRuling,
                     UnknownIdentifier)
from .frame import InvariantTriple, frame_at, surface
from .zoo import builtin

__all__ = [
    "AlphaQuarter", "ConoidalSurface", "ConsistencyError", "CylindricalRuling",
    "DomainError", "ExpressionSyntaxError", "GeometryError", "InputError",
    "InvariantTriple", "NonDifferentiable", "RulekitError", "SingularSlope",
    "TorsalRuling", "UnknownIdentifier", "builtin", "frame_at", "surface",
]
