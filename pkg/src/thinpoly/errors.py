"""Exception hierarchy shared by every thinpoly module."""

from __future__ import annotations


class ThinpolyError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ThinpolyError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class DomainError(ThinpolyError, ValueError):
    """An operation was called outside its precondition."""


class UnsupportedInputError(ThinpolyError):
    """The input lies outside the class a computation is valid for."""


class ResourceError(ThinpolyError):
    """A configured computation budget would be exceeded."""


class InconsistencyError(ThinpolyError):
    """Oracle data that contradicts itself (wrong dimension or degree)."""


class TheoremViolation(ThinpolyError):
    """A statement proven to hold failed on a concrete instance.

    ``cells`` carries the offending polyomino so callers can serialize a
    replayable fixture.
    """

    def __init__(self, message: str, cells=None, state: dict | None = None):
        self.cells = cells
        self.state = state or {}
        super().__init__(message)
