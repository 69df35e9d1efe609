"""
Search budgets for the planner.

Stops runaway searches by enforcing:
- A maximum number of materialised product states
- A maximum witness length (plan horizon)

A tripped budget is never an error: the solver reports
"budget_exhausted" with the limit that was hit.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .config import DEFAULT_MAX_LEN, DEFAULT_MAX_STATES


@dataclass
class SearchBudget:
    """Counters checked by the breadth-first search."""

    max_states: int = DEFAULT_MAX_STATES
    max_len: int = DEFAULT_MAX_LEN
    states: int = 0
    limit_hit: Optional[str] = field(default=None)

    @classmethod
    def from_limits(cls, max_states: Optional[int] = None, max_len: Optional[int] = None) -> "SearchBudget":
        return cls(
            max_states=DEFAULT_MAX_STATES if max_states is None else max_states,
            max_len=DEFAULT_MAX_LEN if max_len is None else max_len,
        )

    @property
    def tripped(self) -> bool:
        return self.limit_hit is not None

    def charge_state(self) -> bool:
        """
        Account for one newly materialised state.

        Returns:
            False once max_states is exceeded (and records the limit)
        """
        self.states += 1
        if self.states > self.max_states:
            self.limit_hit = "max_states"
            return False
        return True

    def allows_depth(self, depth: int) -> bool:
        """Whether words of length depth + 1 may still be generated."""
        return depth < self.max_len

    def trip_length(self) -> None:
        if self.limit_hit is None:
            self.limit_hit = "max_len"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_states": self.max_states,
            "max_len": self.max_len,
            "states": self.states,
            "limit_hit": self.limit_hit,
        }
