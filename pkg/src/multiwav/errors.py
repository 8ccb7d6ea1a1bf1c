"""Exception hierarchy shared by all modules."""


class MultiwavError(Exception):
    """Base class for every error raised by the package."""


class InvalidArgumentError(MultiwavError, ValueError):
    """A parameter violates a documented precondition."""


class InvalidFilterError(MultiwavError, ValueError):
    """A filter does not satisfy the 2-scale relation of its scaling function."""


class InvalidSignalError(MultiwavError, ValueError):
    """Sampled signal is degenerate (too short, non-finite, ragged)."""


class UndefinedMetricError(MultiwavError, ArithmeticError):
    """Metric denominator vanishes."""


class ParseError(MultiwavError, ValueError):
    """Malformed input text (protein sequence, CSV, JSON).

    ``position`` is 1-based (residue index or line number) when known.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
