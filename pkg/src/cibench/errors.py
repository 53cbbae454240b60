"""Exception types raised across the package."""

from __future__ import annotations


class BenchmarkError(Exception):
    """Base class for every error this package raises on purpose."""


class ParseError(BenchmarkError):
    """A file violated its format contract.

    Carries the offending path and, when known, the 1-based line number.
    """

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}: "
            if line is not None:
                where = f"{path}:{line}: "
        super().__init__(where + message)


class ValidationError(BenchmarkError):
    """In-memory data violated one of its invariants."""


class CalibrationError(BenchmarkError):
    """Intercept calibration could not reach the requested rate."""


class EstimationError(BenchmarkError):
    """An estimator cannot produce a prediction for the given instance."""
