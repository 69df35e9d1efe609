"""
Domain model for qualitative timeline-based planning.

Types:
- StateVariable: finite value domain plus the allowed value successions
- Token / Timeline / Plan: concrete evolutions with integer durations
- Term / Atom / TokenPattern: the constraint language of rules
- ExistentialStatement / SynchronizationRule / PlanningProblem

Everything here is immutable; operations over these types live in
oracle.py (semantics), closure.py and eagerness.py (analysis).
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import accumulate
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple


class Endpoint(str, Enum):
    """Which end of a token a term refers to."""

    START = "start"
    END = "end"


@dataclass(frozen=True)
class Term:
    """start(a) or end(a) for a token name a."""

    endpoint: Endpoint
    token: str

    def __str__(self) -> str:
        return f"{self.endpoint.value}({self.token})"

    @property
    def is_start(self) -> bool:
        return self.endpoint is Endpoint.START


def start(name: str) -> Term:
    """Shorthand for the start term of a token name."""
    return Term(Endpoint.START, name)


def end(name: str) -> Term:
    """Shorthand for the end term of a token name."""
    return Term(Endpoint.END, name)


def term_key(term: Term) -> Tuple[str, int]:
    """Sort key placing start(a) before end(a), names alphabetically."""
    return (term.token, 0 if term.is_start else 1)


@dataclass(frozen=True)
class Atom:
    """
    Qualitative atom lhs <= rhs (strict: lhs < rhs).

    bounds is only set by the parser when it meets a quantitative atom
    (lhs <=[l,u] rhs); such atoms are outside the qualitative fragment and
    validate_problem reports them.
    """

    lhs: Term
    rhs: Term
    strict: bool = False
    bounds: Optional[Tuple[int, Optional[int]]] = None

    def __str__(self) -> str:
        if self.bounds is not None:
            lower, upper = self.bounds
            return f"{self.lhs} <=[{lower},{'inf' if upper is None else upper}] {self.rhs}"
        return f"{self.lhs} {'<' if self.strict else '<='} {self.rhs}"

    @property
    def tokens(self) -> Tuple[str, str]:
        return (self.lhs.token, self.rhs.token)

    @property
    def quantitative(self) -> bool:
        return self.bounds is not None

    def is_trivial(self) -> bool:
        """t <= t, or start(a) <= end(a) / start(a) < end(a) on one token."""
        if self.lhs == self.rhs:
            return True
        return (
            self.lhs.token == self.rhs.token
            and self.lhs.is_start
            and not self.rhs.is_start
        )


def atom_key(atom: Atom) -> Tuple:
    return (term_key(atom.lhs), term_key(atom.rhs), atom.strict)


def leq(lhs: Term, rhs: Term) -> Atom:
    return Atom(lhs, rhs, strict=False)


def less(lhs: Term, rhs: Term) -> Atom:
    return Atom(lhs, rhs, strict=True)


def equals(lhs: Term, rhs: Term) -> Tuple[Atom, Atom]:
    """The abbreviation lhs = rhs, i.e. lhs <= rhs and rhs <= lhs."""
    return (Atom(lhs, rhs), Atom(rhs, lhs))


@dataclass(frozen=True)
class TokenPattern:
    """A token name bound to a variable/value pair, as in a0[x0=v0]."""

    name: str
    var: str
    value: str

    def __str__(self) -> str:
        return f"{self.name}[{self.var}={self.value}]"


@dataclass(frozen=True)
class ExistentialStatement:
    """exists a1[x1=v1] ... an[xn=vn]. C"""

    quantifiers: Tuple[TokenPattern, ...] = ()
    clause: FrozenSet[Atom] = frozenset()

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(q.name for q in self.quantifiers)

    def sorted_atoms(self) -> List[Atom]:
        return sorted(self.clause, key=atom_key)

    def occurring_names(self) -> FrozenSet[str]:
        return frozenset(name for atom in self.clause for name in atom.tokens)

    def __str__(self) -> str:
        body = " & ".join(str(a) for a in self.sorted_atoms()) or "true"
        if not self.quantifiers:
            return body
        return f"exists {' '.join(str(q) for q in self.quantifiers)}. {body}"


@dataclass(frozen=True)
class SynchronizationRule:
    """
    a0[x0=v0] => E1 | ... | Ek, or the triggerless true => E1 | ... | Ek.

    label is a human-facing name (rule identifier in problem files, catalog
    code in compiled BPMN problems); it carries no semantics.
    """

    trigger: Optional[TokenPattern]
    disjuncts: Tuple[ExistentialStatement, ...]
    label: str = ""

    @property
    def triggered(self) -> bool:
        return self.trigger is not None

    @property
    def trigger_name(self) -> Optional[str]:
        return self.trigger.name if self.trigger is not None else None

    def patterns(self, disjunct: int = 0) -> Dict[str, TokenPattern]:
        """Token name -> pattern for the trigger plus one disjunct's quantifiers."""
        table = {q.name: q for q in self.disjuncts[disjunct].quantifiers}
        if self.trigger is not None:
            table[self.trigger.name] = self.trigger
        return table

    def renamed(self, prefix: str) -> "SynchronizationRule":
        """Copy of the rule with every token name prefixed."""

        def pattern(p: TokenPattern) -> TokenPattern:
            return TokenPattern(prefix + p.name, p.var, p.value)

        def term(t: Term) -> Term:
            return Term(t.endpoint, prefix + t.token)

        disjuncts = tuple(
            ExistentialStatement(
                quantifiers=tuple(pattern(q) for q in d.quantifiers),
                clause=frozenset(
                    Atom(term(a.lhs), term(a.rhs), a.strict, a.bounds) for a in d.clause
                ),
            )
            for d in self.disjuncts
        )
        trigger = pattern(self.trigger) if self.trigger is not None else None
        return SynchronizationRule(trigger, disjuncts, self.label)

    def __str__(self) -> str:
        head = str(self.trigger) if self.trigger is not None else "true"
        return f"{head} => {' | '.join(str(d) for d in self.disjuncts)}"


@dataclass(frozen=True)
class StateVariable:
    """
    A state variable x = (V_x, T_x, D_x) of the qualitative fragment.

    Durations are not stored: every value admits any duration >= 1.
    transitions lists (value, successors) pairs; values absent from it
    have no successor.
    """

    name: str
    values: Tuple[str, ...]
    transitions: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()
    _successors: Dict[str, FrozenSet[str]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        table: Dict[str, FrozenSet[str]] = {}
        for value, succ in self.transitions:
            table[value] = table.get(value, frozenset()) | frozenset(succ)
        object.__setattr__(self, "_successors", table)

    @classmethod
    def of(
        cls,
        name: str,
        values: Sequence[str],
        transitions: Optional[Mapping[str, Iterable[str]]] = None,
    ) -> "StateVariable":
        """Build a variable; transitions=None means every value may follow every value."""
        values = tuple(values)
        if transitions is None:
            trans = tuple((v, values) for v in values)
        else:
            trans = tuple((v, tuple(transitions.get(v, ()))) for v in values)
            extra = [v for v in transitions if v not in values]
            trans += tuple((v, tuple(transitions[v])) for v in extra)
        return cls(name, values, trans)

    def successors(self, value: str) -> FrozenSet[str]:
        return self._successors.get(value, frozenset())

    def duration_bounds(self, value: str) -> Tuple[int, Optional[int]]:
        """(1, None): the qualitative fragment leaves durations unbounded."""
        return (1, None)

    def index_of(self, value: str) -> int:
        return self.values.index(value)


@dataclass(frozen=True)
class Token:
    var: str
    value: str
    duration: int


@dataclass(frozen=True)
class Timeline:
    var: str
    tokens: Tuple[Token, ...] = ()

    @property
    def horizon(self) -> int:
        return sum(t.duration for t in self.tokens)

    def start_times(self) -> List[int]:
        return [0] + list(accumulate(t.duration for t in self.tokens))[:-1] if self.tokens else []

    def start_time(self, index: int) -> int:
        return sum(t.duration for t in self.tokens[:index])

    def end_time(self, index: int) -> int:
        return self.start_time(index) + self.tokens[index].duration

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Plan:
    """One timeline per variable, sorted by variable name, sharing a horizon."""

    timelines: Tuple[Timeline, ...]
    horizon: int

    @classmethod
    def from_segments(cls, segments: Mapping[str, Sequence[Tuple[str, int]]]) -> "Plan":
        """Build a plan from {var: [(value, duration), ...]}."""
        timelines = tuple(
            Timeline(var, tuple(Token(var, value, duration) for value, duration in segments[var]))
            for var in sorted(segments)
        )
        horizon = timelines[0].horizon if timelines else 0
        return cls(timelines, horizon)

    @classmethod
    def empty(cls, variables: Iterable[str]) -> "Plan":
        return cls(tuple(Timeline(var) for var in sorted(variables)), 0)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(t.var for t in self.timelines)

    def timeline(self, var: str) -> Timeline:
        for t in self.timelines:
            if t.var == var:
                return t
        raise KeyError(var)

    def has_timeline(self, var: str) -> bool:
        return any(t.var == var for t in self.timelines)

    def start_time(self, var: str, index: int) -> int:
        return self.timeline(var).start_time(index)

    def end_time(self, var: str, index: int) -> int:
        return self.timeline(var).end_time(index)

    def segments(self) -> Dict[str, List[Tuple[str, int]]]:
        return {t.var: [(tok.value, tok.duration) for tok in t.tokens] for t in self.timelines}

    def replace(self, var: str, segments: Sequence[Tuple[str, int]]) -> "Plan":
        """Copy with one timeline swapped out (used to build mutated fixtures)."""
        table = self.segments()
        table[var] = list(segments)
        return Plan.from_segments(table)

    def to_dict(self) -> Dict:
        return {
            "horizon": self.horizon,
            "timelines": {
                t.var: [{"value": tok.value, "duration": tok.duration} for tok in t.tokens]
                for t in self.timelines
            },
        }

    def render(self) -> str:
        """ASCII timeline chart, one row per variable."""
        if not self.timelines:
            return "(no variables)"
        width = max(len(t.var) for t in self.timelines)
        rows = []
        for t in self.timelines:
            cells = []
            for tok in t.tokens:
                cell = tok.value[: max(1, tok.duration * 4 - 1)]
                cells.append(cell.center(tok.duration * 4 - 1, "-"))
            rows.append(f"{t.var.ljust(width)} |{'|'.join(cells)}|")
        return "\n".join(rows)


def value_universe(variables: Iterable[StateVariable]) -> Tuple[str, ...]:
    """Union of all domains, in first-declaration order (variables sorted by name)."""
    seen: Dict[str, None] = {}
    for var in sorted(variables, key=lambda v: v.name):
        for value in var.values:
            seen.setdefault(value, None)
    return tuple(seen)


@dataclass(frozen=True)
class PlanningProblem:
    """P = (SV, S)."""

    variables: Tuple[StateVariable, ...]
    rules: Tuple[SynchronizationRule, ...] = ()

    def variable(self, name: str) -> Optional[StateVariable]:
        for v in self.variables:
            if v.name == name:
                return v
        return None

    @property
    def variable_names(self) -> Tuple[str, ...]:
        return tuple(sorted(v.name for v in self.variables))

    def value_universe(self) -> Tuple[str, ...]:
        return value_universe(self.variables)

    def rule_labels(self) -> List[str]:
        return [rule.label or f"R{i + 1}" for i, rule in enumerate(self.rules)]

    def scoped_rules(self) -> Tuple[SynchronizationRule, ...]:
        """Rules renamed apart so distinct rules never share token names."""
        return tuple(rule.renamed(f"r{i}.") for i, rule in enumerate(self.rules))

    def iter_patterns(self) -> Iterator[Tuple[str, TokenPattern]]:
        """(rule label, pattern) for every trigger and quantifier."""
        for label, rule in zip(self.rule_labels(), self.rules):
            if rule.trigger is not None:
                yield label, rule.trigger
            for d in rule.disjuncts:
                for q in d.quantifiers:
                    yield label, q
