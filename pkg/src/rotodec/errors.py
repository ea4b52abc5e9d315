"""Exception types shared across the engine.

Argument validation raises plain ValueError.  The classes below distinguish
numerical failures (exit code 2 in the CLI) from oracle disagreement (exit
code 3).
"""


class ConvergenceViolationError(ValueError):
    """A radial integral does not converge for the requested indices."""


class ToleranceNotReachedError(RuntimeError):
    """A quadrature or series did not reach the requested tolerance.

    Carries the best value achieved and the estimated relative error so
    callers can decide whether the partial result is still usable.
    """

    def __init__(self, message, value=None, estimate=None):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


class TailToleranceError(ToleranceNotReachedError):
    """Series truncation tail estimate exceeds the requested tolerance."""


class OracleMismatchError(RuntimeError):
    """Series engine and brute-force oracle disagree beyond threshold."""
