"""Exception types and the search budget shared by the exhaustive routines."""

from __future__ import annotations

import os
import time


class MultisetCodesError(Exception):
    """Base class for all errors raised by this package."""


class BudgetExhausted(MultisetCodesError):
    """A search ran out of its node or time budget before finishing.

    This is *not* a negative answer: the question is simply undecided.
    """


class DegenerateCodeError(MultisetCodesError, ValueError):
    """A code would have fewer than two codewords."""


class DecodingError(MultisetCodesError):
    """The received word is outside the decoding region of the code."""


class Budget:
    """Node and wall-clock limits for a search.

    ``tick()`` is called once per search node and raises
    :class:`BudgetExhausted` when either limit is hit.  A budget with no
    limits never raises.
    """

    def __init__(self, max_nodes: int | None = None, max_ms: float | None = None):
        if max_nodes is not None and max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if max_ms is not None and max_ms <= 0:
            raise ValueError("max_ms must be positive")
        self.max_nodes = max_nodes
        self.max_ms = max_ms
        self.nodes = 0
        self._deadline = None if max_ms is None else time.monotonic() + max_ms / 1000.0

    @classmethod
    def from_env(cls, max_nodes: int | None = None) -> "Budget":
        """Budget whose time cap comes from ``MULTISET_BUDGET_MS`` if set."""
        raw = os.environ.get("MULTISET_BUDGET_MS")
        return cls(max_nodes=max_nodes, max_ms=float(raw) if raw else None)

    def tick(self, count: int = 1) -> None:
        self.nodes += count
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted(f"node budget of {self.max_nodes} exhausted")
        # checking the clock every node is measurable overhead in tight loops
        if self._deadline is not None and (self.nodes & 0x3FF) == 0:
            if time.monotonic() > self._deadline:
                raise BudgetExhausted(f"time budget of {self.max_ms} ms exhausted")


def as_budget(budget: "Budget | int | None") -> Budget:
    """Accept a Budget, a bare node count, or None (unlimited)."""
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(max_nodes=int(budget))
