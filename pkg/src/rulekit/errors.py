"""Exception hierarchy.

Two families matter to callers: input errors (bad expressions, bad files,
bad flags) and geometric domain errors (the surface or point is outside
the region where the formulas are defined). The CLI maps them to exit
codes 2 and 3 respectively.
"""


class RulekitError(Exception):
    """Base class for all rulekit errors."""


class InputError(RulekitError, ValueError):
    """Malformed user input."""


class ExpressionSyntaxError(InputError):
    """Expression text does not match the grammar."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        detail = f"{message} at byte offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class UnknownIdentifier(InputError):
    def __init__(self, name, offset):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown identifier {name!r} at byte offset {offset}")


class SurfaceFileError(InputError):
    """Problem in a surface definition file."""


class GeometryError(RulekitError):
    """Base class for errors raised because a formula is undefined."""


class DomainError(GeometryError, ValueError):
    """Evaluation point is outside the domain of a function or surface."""


class NonDifferentiable(DomainError):
    pass


class TorsalRuling(GeometryError):
    """The parameter of distribution vanishes (or changes sign)."""


class ConoidalSurface(GeometryError):
    """A non-conoidal surface (kappa != 0) is required."""


class CylindricalRuling(GeometryError):
    """The spherical image of the rulings is stationary."""


class AlphaQuarter(GeometryError):
    """The requested property is vacuous for the equiaffine normalization."""


class SingularSlope(GeometryError):
    """The curve ODE has a vertical tangent (the v' coefficient vanishes).

    ``partial`` holds the curve integrated up to the singular point when the
    error is raised from an integrator.
    """

    def __init__(self, message, u=None, v=None, partial=None):
        self.u = u
        self.v = v
        self.partial = partial
        super().__init__(message)


class ConsistencyError(RulekitError):
    """Two independent evaluation routes disagree beyond tolerance."""
