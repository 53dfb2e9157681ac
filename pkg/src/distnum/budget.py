from __future__ import annotations

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**7


class Budget:
    """Node counter shared by the searches of one computation."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = DEFAULT_BUDGET):
        if limit is not None and limit < 1:
            raise ValueError("budget must be at least 1")
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(self.limit)


def as_budget(budget: "Budget | int | None") -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)
