"""Exception types shared across the package."""

from __future__ import annotations


class GraphFactorsError(Exception):
    """Base class for all package errors."""


class CapacityError(GraphFactorsError, ValueError):
    """An input exceeds a hard size limit (order, gadget size, sweep size)."""


class ParameterError(GraphFactorsError, ValueError):
    """Parameters violate a construction's or theorem's hypothesis."""


class Graph6Error(GraphFactorsError, ValueError):
    """Malformed graph6 input."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotEquitableError(GraphFactorsError, ValueError):
    """A vertex partition is not equitable."""


class ConvergenceError(GraphFactorsError, RuntimeError):
    """An iterative eigensolver hit its iteration cap."""
