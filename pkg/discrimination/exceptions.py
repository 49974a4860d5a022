"""Error types raised by the discrimination library."""


class DiscriminationError(Exception):
    """Base class for every library error."""


class ValidationError(DiscriminationError, ValueError):
    """Input violates a documented precondition or type invariant."""


class RefusalError(DiscriminationError):
    """The request lies outside the range a routine can certify."""


class CoverageError(DiscriminationError):
    """A net failed its coverage validation.

    `witness` is the uncovered target and `distance` its gauge distance to
    the nearest net point.
    """

    def __init__(self, message, witness=None, distance=None):
        super().__init__(message)
        self.witness = witness
        self.distance = distance


class EmissionError(DiscriminationError):
    """Writing or reading an experiment output failed."""
