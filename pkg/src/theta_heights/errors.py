"""Exception types shared across the package.

Every error raised by the public API derives from ThetaHeightsError so that
callers can distinguish domain failures from programming mistakes.
"""


class ThetaHeightsError(Exception):
    """Base class for all package errors."""


class OddCoefficient(ThetaHeightsError):
    """Exact halving hit an odd coefficient; an upstream combination is wrong."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"coefficient at degree {index} is odd, cannot halve exactly")


class DomainError(ThetaHeightsError):
    """Argument lies outside the validity region of a bound or series."""


class ToleranceUnreachable(ThetaHeightsError):
    """The requested certified tolerance cannot be met by the available tail bounds."""


class AccuracyLoss(ThetaHeightsError):
    """Cancellation in a theta sum exceeds the requested accuracy."""


class InsufficientTable(ThetaHeightsError):
    """A count table does not cover the requested size or height range."""


class TooLarge(ThetaHeightsError):
    """Exhaustive enumeration requested beyond the safety guard."""


class DegenerateRange(ThetaHeightsError):
    """Height argument outside 1..n-1, where the tail probability is trivial."""
