"""Exception hierarchy shared by every module."""


class CrushCountError(Exception):
    """Base class for all package errors."""


class InvalidInputError(CrushCountError, ValueError):
    """Rejected input: malformed file, out-of-range parameter, size mismatch."""


class SamplerBudgetExceeded(CrushCountError):
    """The Moser-Tardos resampling budget ran out before a stable colouring was found."""

    def __init__(self, message, level=None, sample_index=None):
        super().__init__(message)
        self.level = level
        self.sample_index = sample_index


class OracleBudgetExceeded(CrushCountError):
    """Exhaustive enumeration would exceed the configured work budget."""
