"""
Exception hierarchy for the planner.

All library errors derive from PlannerError so callers (the CLI in
particular) can map them onto exit codes in one place. Report-style
operations (validation, classification) return violation lists instead
of raising.
"""

from typing import Any, List, Optional, Sequence


class PlannerError(Exception):
    """Base class for every error raised by the planner package."""
    pass


class ProblemSyntaxError(PlannerError):
    """Raised when a problem or word text cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class ProblemValidationError(PlannerError):
    """Raised when an operation requires a problem that passes validate_problem."""

    def __init__(self, violations: Sequence[Any]):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"Invalid planning problem: {lines}{more}")


class InvalidPlanError(PlannerError):
    """Raised when a plan does not conform to its problem's variables."""

    def __init__(self, violations: Sequence[Any]):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        super().__init__(f"Invalid plan: {lines}")


class UnboundTokenError(PlannerError):
    """Raised when a term mentions a token name missing from the assignment."""
    pass


class UnknownTokenError(PlannerError):
    """Raised when a classifier is asked about a name the clause never mentions."""
    pass


class InconsistentClauseError(PlannerError):
    """Raised when a rule DAG is requested for a clause whose closure is inconsistent."""
    pass


class DisjunctiveRuleError(PlannerError):
    """Raised when a rule DAG is requested for a rule with more than one disjunct."""
    pass


class NonEagerProblemError(PlannerError):
    """Raised when automata construction is refused for a non-eager problem."""

    def __init__(self, reports: List[Any]):
        self.reports = list(reports)
        failing = [r for r in self.reports if not r.eager]
        summary = "; ".join(f"{r.rule}: {', '.join(r.reasons)}" for r in failing)
        super().__init__(f"Problem is not eager: {summary}")


class SymbolError(PlannerError):
    """Raised when a symbol mixes initial and non-initial entries."""
    pass


class WordShapeError(PlannerError):
    """Raised when a word is not empty or initial-then-non-initial."""
    pass


class SoundnessError(PlannerError):
    """Raised when the solver produces a witness the semantic oracle rejects."""
    pass


class StatementMismatchError(PlannerError):
    """Raised when the oracle and the closed-form membership predicate disagree."""
    pass


class MalformedTreeError(PlannerError):
    """Raised when a SESE block tree violates its structural invariants."""
    pass


class PlanFileError(PlannerError):
    """Raised when a plan file is not JSON or does not match the plan-file schema."""
    pass


class CommandError(PlannerError):
    """Raised by CLI commands; carries the exit code to report."""

    def __init__(self, message: str, exit_code: int = 1):
        self.exit_code = exit_code
        super().__init__(message)
