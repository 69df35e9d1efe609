"""
Eagerness classification of synchronization rules.

A quantified token name is left-ambiguous when a greedy reader cannot commit
to the first matching start event, and right-ambiguous when it cannot commit
to the first matching end event. A rule is eager when it has exactly one
disjunct and no name is both; a problem is eager when all its rules are.

Reasons are reported in a fixed vocabulary:
- "disjunctive"
- "token <name> is ambiguous"
- "inconsistent clause"
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .closure import ClauseClosure, rule_closure
from .errors import UnknownTokenError
from .models import PlanningProblem, SynchronizationRule, end, start

logger = logging.getLogger(__name__)


def _other_terms(name: str, cl: ClauseClosure):
    return sorted((t for t in cl.terms if t.token != name), key=str)


def _check_known(name: str, cl: ClauseClosure) -> None:
    if name not in cl.token_names():
        raise UnknownTokenError(f"token {name} does not occur in the clause")


def is_left_ambiguous(name: str, rule: SynchronizationRule, cl: ClauseClosure) -> bool:
    """
    Whether the start of `name` cannot be matched greedily.

    Args:
        name: Token name occurring in the rule's (single) clause
        rule: Rule the clause belongs to
        cl: Closure of that clause

    Returns:
        True iff name is not the trigger, its start is not glued to either
        trigger endpoint, and some other name's term t either coincides
        with start(name) (t not a trigger term) or lies after start(name)
        without lying after end(name)

    Raises:
        UnknownTokenError: If name does not occur in the closure
    """
    _check_known(name, cl)
    trigger = rule.trigger_name
    if name == trigger:
        return False
    s, e = start(name), end(name)
    if trigger is not None and (cl.equiv(s, start(trigger)) or cl.equiv(s, end(trigger))):
        return False
    for t in _other_terms(name, cl):
        if t.token != trigger and cl.equiv(s, t):
            return True
        if cl.leq(s, t) and not cl.leq(e, t):
            return True
    return False


def is_right_ambiguous(name: str, rule: SynchronizationRule, cl: ClauseClosure) -> bool:
    """Whether the end of `name` cannot be matched greedily (same contract as is_left_ambiguous)."""
    _check_known(name, cl)
    if name == rule.trigger_name:
        return False
    s, e = start(name), end(name)
    for t in _other_terms(name, cl):
        if cl.leq(e, t):
            return True
        if cl.leq(t, e) and not cl.leq(t, s):
            return True
    return False


def is_ambiguous(name: str, rule: SynchronizationRule, cl: ClauseClosure) -> bool:
    return is_left_ambiguous(name, rule, cl) and is_right_ambiguous(name, rule, cl)


@dataclass(frozen=True)
class TokenAmbiguity:
    """Left/right verdicts for one token name; None marks the trigger."""

    name: str
    left: Optional[bool]
    right: Optional[bool]

    @property
    def is_trigger(self) -> bool:
        return self.left is None

    @property
    def ambiguous(self) -> Optional[bool]:
        if self.is_trigger:
            return None
        return self.left and self.right

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "left": self.left, "right": self.right, "ambiguous": self.ambiguous}


@dataclass
class EagerReport:
    """Classification of one rule."""

    rule: str
    eager: bool
    reasons: List[str] = field(default_factory=list)
    tokens: List[List[TokenAmbiguity]] = field(default_factory=list)

    def describe(self) -> str:
        if self.eager:
            return f"{self.rule}: eager"
        return f"{self.rule}: not eager ({', '.join(self.reasons)})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "eager": self.eager,
            "reasons": list(self.reasons),
            "tokens": [[t.to_dict() for t in d] for d in self.tokens],
        }


def classify_disjunct(rule: SynchronizationRule, index: int = 0) -> List[TokenAmbiguity]:
    """Per-name verdicts for one disjunct, trigger first, then quantifiers in order."""
    cl = rule_closure(rule, index)
    out = []
    if rule.trigger is not None:
        out.append(TokenAmbiguity(rule.trigger.name, None, None))
    for name in rule.disjuncts[index].names:
        out.append(TokenAmbiguity(name, is_left_ambiguous(name, rule, cl), is_right_ambiguous(name, rule, cl)))
    return out


def is_eager_rule(rule: SynchronizationRule, label: str = "") -> EagerReport:
    """
    Classify a rule.

    Args:
        rule: Rule to classify (validated)
        label: Name used in the report; defaults to rule.label

    Returns:
        EagerReport with reasons when the rule is not eager
    """
    report = EagerReport(rule=label or rule.label or "rule", eager=True)
    if len(rule.disjuncts) != 1:
        report.reasons.append("disjunctive")
    for index in range(len(rule.disjuncts)):
        if not rule_closure(rule, index).consistent:
            if "inconsistent clause" not in report.reasons:
                report.reasons.append("inconsistent clause")
            report.tokens.append([])
            continue
        verdicts = classify_disjunct(rule, index)
        report.tokens.append(verdicts)
        for v in verdicts:
            reason = f"token {v.name} is ambiguous"
            if v.ambiguous and reason not in report.reasons:
                report.reasons.append(reason)
    report.eager = not report.reasons
    return report


def classify_problem(problem: PlanningProblem) -> List[EagerReport]:
    reports = [is_eager_rule(rule, label) for label, rule in zip(problem.rule_labels(), problem.rules)]
    for r in reports:
        if not r.eager:
            logger.info("%s", r.describe())
    return reports


def is_eager_problem(problem: PlanningProblem) -> bool:
    return all(r.eager for r in classify_problem(problem))
