"""Exception types shared across the package.

Domain-style errors double as ValueError so that generic callers can catch
them without importing this module.
"""

from __future__ import annotations


class HoroperiodError(Exception):
    """Base class for all package errors."""


class NonpositiveArgument(HoroperiodError, ValueError):
    """An argument that must be strictly positive was not."""


class UnsupportedRegion(HoroperiodError, ValueError):
    """The (p, q) exponent pair lies outside the operation's admissible region."""


class DomainError(HoroperiodError, ValueError):
    """Arguments outside the documented domain box, or an overflowing power."""


class InvalidShape(HoroperiodError, ValueError):
    """Shape coordinates violate 0 < alpha < 1 < r."""


class BelowMinimum(HoroperiodError, ValueError):
    """Energy level below the minimum of the potential."""


class DegenerateLevel(HoroperiodError, ValueError):
    """Energy level indistinguishable from the minimum; use the limit formula."""


class BoundaryDivergence(HoroperiodError, ValueError):
    """Threshold formula evaluated on or past its divergence boundary."""


class GridTooCoarse(HoroperiodError, ValueError):
    """Periodic grid has too few samples for a trustworthy residual."""


class ConvergenceFailure(HoroperiodError):
    """Iteration did not reach the requested tolerance.

    For quadrature the best refinement seen is attached as ``best``
    (a PeriodValue) so loose-tolerance callers can still use it.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class DriftExceeded(HoroperiodError):
    """First-integral drift exceeded its tolerance; partial orbit attached."""

    def __init__(self, message: str, orbit=None, drift: float = float("nan")):
        super().__init__(message)
        self.orbit = orbit
        self.drift = drift


class StepFailure(HoroperiodError):
    """The ODE solver could not complete the requested time span."""


class NoEventFound(HoroperiodError):
    """No turning-point event found within the integrated span."""


class PeriodMismatch(HoroperiodError):
    """Measured half-period does not match the requested pi/(2m)."""

    def __init__(self, message: str, measured: float, expected: float):
        super().__init__(message)
        self.measured = measured
        self.expected = expected
