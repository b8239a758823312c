"""Shared error types and the guess budget used by the exponential solvers."""

from __future__ import annotations


class ClassViolation(Exception):
    """An input graph does not satisfy the class precondition of a solver."""


class BudgetExceeded(Exception):
    """The guess enumeration passed the caller-supplied cap.

    Catching this means the answer is "unknown": the search was cut off
    before it could either find an embedding or exhaust the guess space.
    It is never raised after a definite answer was established.
    """

    def __init__(self, message: str = "guess budget exhausted", used: int = 0):
        super().__init__(message)
        self.used = used


class Budget:
    """Counts guesses and raises BudgetExceeded when the cap is passed.

    A limit of None means unlimited; the counter still runs so callers can
    report how much work a solve took.
    """

    def __init__(self, limit: int | None):
        if limit is not None and limit < 0:
            raise ValueError("budget limit must be nonnegative")
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(used=self.used)


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
