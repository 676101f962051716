"""Exception hierarchy shared by all modules.

Two broad failure classes matter downstream: bad inputs (rejected before any
computation starts) and computations that ran but could not reach the
requested accuracy.  The CLI maps them to exit codes 2 and 3 respectively.
"""


class FockChannelError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(FockChannelError, ValueError):
    """Invalid parameters or incompatible request, detected up front."""


class NumericalAccuracyError(FockChannelError, RuntimeError):
    """A numerical routine could not meet its accuracy target.

    Carries the best available value so callers can inspect it.
    """

    def __init__(self, message, best_estimate=None, err_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.err_estimate = err_estimate


class TruncationError(NumericalAccuracyError):
    """Fock-space truncation too small for the requested evolution."""


class IntegrationFailureError(NumericalAccuracyError):
    """A state invariant was violated during time integration."""

    def __init__(self, message, time=None, **kw):
        super().__init__(message, **kw)
        self.time = time


class AccuracyWarning(UserWarning):
    """Result returned, but its error estimate exceeds the requested tolerance."""
