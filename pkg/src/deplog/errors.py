"""Exception types shared across the package."""

from __future__ import annotations


class DeplogError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DeplogError):
    """Raised on malformed input text.

    ``position`` is a 0-based character offset into the source string, or
    None when no single offset makes sense (e.g. unexpected end of input
    reported at len(text)).
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ShapeError(DeplogError):
    """Raised when a value is structurally invalid for an operation.

    Covers signature mismatches, malformed JSON payloads, teams whose rows
    do not match their variable list, transform preconditions (e.g. a
    sentence that is not in the expected normal form), and similar.
    """


class EvalError(DeplogError):
    """Raised when evaluation is asked something semantically ill-posed,

    e.g. a formula with free variables passed to a sentence-truth check, or
    a dependence atom reaching the classical first-order evaluator.
    """


class BudgetExceededError(DeplogError):
    """Raised when a work budget runs out mid-computation.

    The check that raised is abandoned; callers surface this distinctly
    (never as a silent pass or fail).
    """

    def __init__(self, message: str, spent: int, limit: int):
        self.spent = spent
        self.limit = limit
        super().__init__(f"{message} (budget {limit} exhausted, spent >= {spent})")
