"""Exception hierarchy shared across the package."""


class LegboundError(Exception):
    """Base class for all package errors."""


class DomainError(LegboundError, ValueError):
    """Abscissa outside [-1, 1] or a parameter outside its domain."""


class DegreeError(LegboundError, ValueError):
    """Polynomial degree out of range."""


class UnsupportedOrderError(LegboundError, ValueError):
    """Gegenbauer order outside the implemented set."""


class CapExceededError(LegboundError, ValueError):
    """Exact-arithmetic size cap exceeded."""


class DepthError(LegboundError, ValueError):
    """Expansion depth r outside its admissible range."""


class NonpositiveFactorError(LegboundError, ValueError):
    """A closed-form product would contain a nonpositive factor."""


class GammaPoleError(LegboundError, ValueError):
    """A Gamma function argument hit a pole."""


class ValidityError(LegboundError, ValueError):
    """A bound was requested outside its validity region."""


class ConvergenceError(LegboundError, ArithmeticError):
    """An iterative numerical method failed to converge."""


class IntegrationError(LegboundError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, worst_interval=None):
        super().__init__(message)
        self.worst_interval = worst_interval


class DerivativeUnavailableError(LegboundError, ValueError):
    """The requested derivative is not pointwise representable."""


class OverrideKeyError(LegboundError, ValueError):
    """Malformed seminorm override key."""


class ParseError(LegboundError, ValueError):
    """Syntax error in a function expression."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        detail = f"{message} at byte offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(repr(t) for t in self.expected)})"
        super().__init__(detail)


class NonIntegerExponentError(ParseError):
    """Exponent of ``^`` is not an integer literal."""
