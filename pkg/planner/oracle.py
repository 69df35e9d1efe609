"""
Brute-force semantics for planning problems.

Decides rule satisfaction directly on plans, independently of the automata,
by enumerating every assignment of quantified names to matching tokens.
Quantified names may alias each other and the trigger token.

Also hosts the report-style validators for problems and plans.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

from .errors import InvalidPlanError, UnboundTokenError
from .models import (
    Atom,
    Endpoint,
    ExistentialStatement,
    Plan,
    PlanningProblem,
    SynchronizationRule,
    Term,
    end,
    start,
)

logger = logging.getLogger(__name__)

# token name -> (variable, token index on that variable's timeline)
Assignment = Mapping[str, Tuple[str, int]]


@dataclass(frozen=True)
class Violation:
    """One problem or plan defect; code is a stable short description."""

    code: str
    message: str
    where: str = ""

    def __str__(self) -> str:
        prefix = f"{self.where}: " if self.where else ""
        return f"{prefix}{self.code}: {self.message}"

    def to_dict(self) -> Dict[str, str]:
        return {"code": self.code, "message": self.message, "where": self.where}


# ============================================================================
# Validation
# ============================================================================


def validate_problem(problem: PlanningProblem) -> List[Violation]:
    """
    Check the well-formedness conditions of a qualitative planning problem.

    Args:
        problem: Problem to check

    Returns:
        List of violations (empty when the problem is well formed)
    """
    out: List[Violation] = []
    seen_vars = set()
    for var in problem.variables:
        if var.name in seen_vars:
            out.append(Violation("duplicate variable", f"variable {var.name} declared twice", var.name))
        seen_vars.add(var.name)
        if not var.values:
            out.append(Violation("empty domain", f"variable {var.name} has no values", var.name))
        if len(set(var.values)) != len(var.values):
            out.append(Violation("duplicate value", f"variable {var.name} repeats a value", var.name))
        for value, succ in var.transitions:
            for v in (value, *succ):
                if v not in var.values:
                    out.append(
                        Violation("unknown value", f"transition mentions {v}, not a value of {var.name}", var.name)
                    )

    for label, rule in zip(problem.rule_labels(), problem.rules):
        out.extend(_validate_rule(problem, rule, label))
    return out


def _validate_rule(problem: PlanningProblem, rule: SynchronizationRule, label: str) -> List[Violation]:
    out: List[Violation] = []
    if not rule.disjuncts:
        out.append(Violation("no disjuncts", "rule has no existential statement", label))

    patterns = ([rule.trigger] if rule.trigger is not None else []) + [
        q for d in rule.disjuncts for q in d.quantifiers
    ]
    for p in patterns:
        var = problem.variable(p.var)
        if var is None:
            out.append(Violation("unknown variable", f"{p} refers to undeclared variable {p.var}", label))
        elif p.value not in var.values:
            out.append(Violation("unknown value", f"{p} uses {p.value}, not a value of {p.var}", label))

    trigger = rule.trigger_name
    trigger_terms = set()
    for d in rule.disjuncts:
        names = d.names
        if len(set(names)) != len(names) or (trigger is not None and trigger in names):
            out.append(Violation("duplicate token name", f"token names repeat in '{d}'", label))
        bound = set(names) | ({trigger} if trigger else set())
        for atom in d.clause:
            for name in atom.tokens:
                if name not in bound:
                    out.append(Violation("unbound token", f"{name} in '{atom}' is not quantified", label))
            if atom.quantitative:
                out.append(Violation("out of fragment", f"'{atom}' carries bounds", label))
            if atom.is_trivial() and atom.lhs.token != trigger:
                out.append(Violation("trivial atom", f"'{atom}' holds in every plan", label))
            for t in (atom.lhs, atom.rhs):
                if t.token == trigger:
                    trigger_terms.add(t)
        if d.clause:
            occurring = d.occurring_names()
            for name in names:
                if name not in occurring:
                    out.append(Violation("unused quantified token", f"{name} occurs in no atom", label))

    if trigger is not None and trigger_terms != {start(trigger), end(trigger)}:
        out.append(
            Violation("trigger endpoints", f"both start({trigger}) and end({trigger}) must occur", label)
        )
    return out


def validate_plan(problem: PlanningProblem, plan: Plan) -> List[Violation]:
    """
    Check that a plan is a plan over the problem's state variables.

    Args:
        problem: Owning problem
        plan: Plan to check

    Returns:
        List of violations (empty when the plan is valid)
    """
    out: List[Violation] = []
    expected = set(problem.variable_names)
    present = [t.var for t in plan.timelines]
    for var in sorted(expected - set(present)):
        out.append(Violation("missing timeline", f"no timeline for {var}", var))
    for var in sorted(set(present) - expected):
        out.append(Violation("unknown variable", f"timeline for undeclared variable {var}", var))
    for var in sorted({v for v in present if present.count(v) > 1}):
        out.append(Violation("duplicate timeline", f"{var} has more than one timeline", var))

    for timeline in plan.timelines:
        var = problem.variable(timeline.var)
        if var is None:
            continue
        if timeline.horizon != plan.horizon:
            out.append(
                Violation(
                    "horizon mismatch",
                    f"timeline ends at {timeline.horizon}, plan horizon is {plan.horizon}",
                    var.name,
                )
            )
        previous: Optional[str] = None
        for i, token in enumerate(timeline.tokens):
            where = f"{var.name}[{i}]"
            if token.var != var.name:
                out.append(Violation("foreign token", f"token of {token.var} on {var.name}", where))
            if token.value not in var.values:
                out.append(Violation("unknown value", f"{token.value} not in domain of {var.name}", where))
            if token.duration < 1:
                out.append(Violation("bad duration", f"duration {token.duration} < 1", where))
            if previous is not None and token.value not in var.successors(previous):
                out.append(
                    Violation("forbidden transition", f"{previous} -> {token.value} not allowed", where)
                )
            previous = token.value
    return out


# ============================================================================
# Semantics
# ============================================================================


class _PlanIndex:
    """Prefix sums and value lookups precomputed once per plan."""

    def __init__(self, plan: Plan):
        self.starts: Dict[str, List[int]] = {}
        self.ends: Dict[str, List[int]] = {}
        self.by_value: Dict[Tuple[str, str], List[int]] = defaultdict(list)
        for timeline in plan.timelines:
            clock = 0
            starts, ends = [], []
            for i, token in enumerate(timeline.tokens):
                starts.append(clock)
                clock += token.duration
                ends.append(clock)
                self.by_value[(timeline.var, token.value)].append(i)
            self.starts[timeline.var] = starts
            self.ends[timeline.var] = ends

    def time(self, assignment: Assignment, term: Term) -> int:
        try:
            var, index = assignment[term.token]
        except KeyError:
            raise UnboundTokenError(f"unbound token {term.token} in {term}")
        table = self.starts if term.endpoint is Endpoint.START else self.ends
        return table[var][index]

    def candidates(self, var: str, value: str) -> List[int]:
        return self.by_value.get((var, value), [])

    def holds(self, assignment: Assignment, atom: Atom) -> bool:
        lhs = self.time(assignment, atom.lhs)
        rhs = self.time(assignment, atom.rhs)
        return lhs < rhs if atom.strict else lhs <= rhs

    def interval(self, var: str, index: int) -> Tuple[int, int]:
        return (self.starts[var][index], self.ends[var][index])


def eval_term(plan: Plan, assignment: Assignment, term: Term) -> int:
    """
    Evaluate start(a) or end(a) under an assignment of names to tokens.

    Raises:
        UnboundTokenError: If term's token name is not assigned
    """
    if term.token not in assignment:
        raise UnboundTokenError(f"unbound token {term.token} in {term}")
    var, index = assignment[term.token]
    if term.endpoint is Endpoint.START:
        return plan.start_time(var, index)
    return plan.end_time(var, index)


def _disjunct_holds(index: _PlanIndex, statement: ExistentialStatement, base: Dict[str, Tuple[str, int]]) -> bool:
    pools = [
        [(q.var, i) for i in index.candidates(q.var, q.value)] for q in statement.quantifiers
    ]
    names = statement.names
    atoms = statement.sorted_atoms()
    for choice in itertools.product(*pools):
        assignment = dict(base)
        assignment.update(zip(names, choice))
        if all(index.holds(assignment, atom) for atom in atoms):
            return True
    return False


def _first_failing_trigger(index: _PlanIndex, rule: SynchronizationRule) -> Optional[int]:
    """Index of the first trigger token no disjunct covers; -1 for a failed triggerless rule."""
    if rule.trigger is None:
        if any(_disjunct_holds(index, d, {}) for d in rule.disjuncts):
            return None
        return -1
    trig = rule.trigger
    for i in index.candidates(trig.var, trig.value):
        base = {trig.name: (trig.var, i)}
        if not any(_disjunct_holds(index, d, base) for d in rule.disjuncts):
            return i
    return None


def satisfies_rule(plan: Plan, rule: SynchronizationRule) -> bool:
    """
    Decide whether a plan satisfies a synchronization rule.

    Every trigger token (same variable and value as the trigger pattern) must
    be covered by some disjunct under some assignment; a triggerless rule
    needs one such assignment overall.
    """
    return _first_failing_trigger(_PlanIndex(plan), rule) is None


@dataclass
class RuleCheck:
    """Outcome of checking one rule against a plan."""

    rule: str
    satisfied: bool
    failing_token: Optional[int] = None
    interval: Optional[Tuple[int, int]] = None

    def describe(self) -> str:
        if self.satisfied:
            return f"{self.rule}: satisfied"
        if self.failing_token is None or self.failing_token < 0:
            return f"{self.rule}: no disjunct can be satisfied"
        lo, hi = self.interval
        return f"{self.rule}: trigger token #{self.failing_token} [{lo}, {hi}) is not covered"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "satisfied": self.satisfied,
            "failing_token": self.failing_token,
            "interval": list(self.interval) if self.interval else None,
        }


@dataclass
class SolutionReport:
    """Per-rule verdicts for one plan."""

    checks: List[RuleCheck] = field(default_factory=list)

    @property
    def is_solution(self) -> bool:
        return all(c.satisfied for c in self.checks)

    @property
    def failing_rules(self) -> List[str]:
        return [c.rule for c in self.checks if not c.satisfied]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_solution": self.is_solution,
            "failing_rules": self.failing_rules,
            "rules": [c.to_dict() for c in self.checks],
        }


def verify_solution(problem: PlanningProblem, plan: Plan) -> SolutionReport:
    """
    Check every rule of the problem against a plan.

    Args:
        problem: Problem whose rules are checked
        plan: Candidate plan

    Returns:
        SolutionReport listing the first failing trigger token per failing rule

    Raises:
        InvalidPlanError: If the plan does not pass validate_plan
    """
    violations = validate_plan(problem, plan)
    if violations:
        raise InvalidPlanError(violations)

    index = _PlanIndex(plan)
    report = SolutionReport()
    for label, rule in zip(problem.rule_labels(), problem.rules):
        failing = _first_failing_trigger(index, rule)
        if failing is None:
            report.checks.append(RuleCheck(label, True))
            continue
        interval = index.interval(rule.trigger.var, failing) if failing >= 0 else None
        report.checks.append(RuleCheck(label, False, failing, interval))
        logger.debug("rule %s fails at trigger token %s", label, failing)
    return report
