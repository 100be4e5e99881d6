"""Work budgets for the exhaustive checkers.

Every potentially exponential loop (candidate teams, candidate function
tables, structure enumeration) spends from a Budget and aborts with
BudgetExceededError when the limit is hit, so runaway instances fail loudly
instead of hanging.
"""

from __future__ import annotations

import os

from .errors import BudgetExceededError

DEFAULT_CHECK_BUDGET = 10**7
DEFAULT_STRUCTURE_BUDGET = 10**6

_ENV_VAR = "DEPLOG_BUDGET"


class Budget:
    """Mutable spend counter with a hard limit."""

    __slots__ = ("limit", "spent")

    def __init__(self, limit: int):
        if limit <= 0:
            raise ValueError("budget limit must be positive")
        self.limit = limit
        self.spent = 0

    def spend(self, amount: int = 1, context: str = "work") -> None:
        self.spent += amount
        if self.spent > self.limit:
            raise BudgetExceededError(context, self.spent, self.limit)

    def would_exceed(self, amount: int) -> bool:
        return self.spent + amount > self.limit

    def remaining(self) -> int:
        return max(self.limit - self.spent, 0)


def _env_override() -> int | None:
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        return None
    return value if value > 0 else None


def default_check_budget() -> Budget:
    """Budget for a single satisfaction/truth check."""
    return Budget(_env_override() or DEFAULT_CHECK_BUDGET)


def default_structure_budget() -> Budget:
    """Budget for enumerating the structures of one signature and size."""
    return Budget(_env_override() or DEFAULT_STRUCTURE_BUDGET)
