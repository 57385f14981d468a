"""Exception hierarchy shared by the library and the CLI."""


class TwoBridgeError(Exception):
    """Base class for all library errors."""


class InvalidKnotError(TwoBridgeError, ValueError):
    """Raised for parameters outside the two-bridge / C(2n,4) family."""


class InvalidIndexError(TwoBridgeError, ValueError):
    """Raised when a polynomial index is not a family member (e.g. n = 0)."""


class DegenerateParameterError(TwoBridgeError, ValueError):
    """Raised when parameters lie on the reducible locus (tr(Sc) = 0)."""


class SolverFailure(TwoBridgeError, ArithmeticError):
    """Root iteration or continuation failed to converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class GeometryError(TwoBridgeError):
    """No geometric transition was found where one is expected."""


class RegimeError(TwoBridgeError, ValueError):
    """A cone angle lies outside the regime an operation requires."""


class SingularLongitudeError(TwoBridgeError, ZeroDivisionError):
    """The longitude formula has a vanishing denominator."""
