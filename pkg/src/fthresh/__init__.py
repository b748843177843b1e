"""Exact positive-characteristic invariants: F-thresholds, Frobenius powers,
Newton polyhedra of monomial ideals, multiplicities, and the closure and
multiplicity-bound checkers built on them."""

from .errors import (BudgetExceededError, FThreshError, InternalCheckError,
                     PreconditionError, RingMismatchError, SessionSyntaxError)
from .poly import GREVLEX, Ideal, LEX, Polynomial, RingContext, quotient_ring
from .sessions import Session, parse_polynomial, parse_session, render_session

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError", "FThreshError", "InternalCheckError",
    "PreconditionError", "RingMismatchError", "SessionSyntaxError",
    "GREVLEX", "LEX", "Ideal", "Polynomial", "RingContext", "quotient_ring",
    "Session", "parse_polynomial", "parse_session", "render_session",
    "__version__",
]
