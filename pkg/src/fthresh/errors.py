"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: session syntax -> 1, precondition
violations -> 2, budget exhaustion -> 3, internal invariant breaches -> 4.
"""


class FThreshError(Exception):
    """Base class for all package errors."""


class SessionSyntaxError(FThreshError):
    """Malformed session text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class PreconditionError(FThreshError):
    """An operation was called outside its stated hypotheses."""


class RingMismatchError(PreconditionError):
    """Operands live in different ring contexts."""


class BudgetExceededError(FThreshError):
    """A configurable resource budget ran out before an answer was reached."""


class InternalCheckError(FThreshError):
    """A theorem-backed invariant failed; indicates a bug, never bad input."""
