"""Exception types shared across the package."""


class CommSpecialError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CommSpecialError, ValueError):
    """Raised when arguments fall outside the validity region of a routine."""


class ConvergenceError(CommSpecialError, RuntimeError):
    """Raised when an iterative evaluation fails to reach the requested tolerance."""


class RangeError(CommSpecialError, OverflowError):
    """Raised when a result overflows the floating-point range."""


class AccuracyError(CommSpecialError, RuntimeError):
    """Raised when quadrature cannot certify the requested tolerance.

    Carries the best available estimate in ``value``.
    """

    def __init__(self, message: str, value: float | None = None,
                 err_est: float | None = None):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


class LossOfSignificanceError(CommSpecialError, ArithmeticError):
    """Raised when catastrophic cancellation destroys the accuracy of a sum.

    The running total is retained so that callers may decide whether the
    partially cancelled value is still usable.
    """

    def __init__(self, message: str, value: float | None = None):
        super().__init__(message)
        self.value = value
