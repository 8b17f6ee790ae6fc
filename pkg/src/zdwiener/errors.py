"""Exception hierarchy shared by every module."""


class ZDError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(ZDError, ValueError):
    pass


class ParseError(InvalidParameterError):
    """Malformed ring-spec text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ResourceLimitError(ZDError):
    """An enumeration budget would be exceeded."""

    def __init__(self, message: str, requested: int | None = None):
        super().__init__(message)
        self.requested = requested


class InternalConsistencyError(ZDError, ArithmeticError):
    """A mathematical invariant failed: odd doubled sums, inexact divisions, diameter > 3."""
