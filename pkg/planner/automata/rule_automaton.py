"""
DFA tracking the progress of eager synchronization rules.

Each rule becomes a labelled DAG whose nodes are the equivalence classes of
its closed clause; arcs are the non-strict (dashed) and strict (solid)
orderings between classes. A viewpoint pairs a DAG with a downward-closed
progress set K of already matched nodes. A state is SINK or a set of
viewpoints with at least one per rule, linearly ordered by K-inclusion.

Features:
- next/consumed as greedy single passes in topological order
- waiting list with the trigger / shared-class / ordering side conditions
- an enabled viewpoint is kept with its trigger-independent progress
- horizon closing: acceptance reads the token endings at the end of the word
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

import networkx as nx

from ..cache import TransitionCache
from ..closure import ClauseClosure, rule_closure
from ..config import TRANSITION_CACHE_SIZE
from ..eagerness import classify_problem
from ..errors import DisjunctiveRuleError, InconsistentClauseError, NonEagerProblemError
from ..models import Endpoint, PlanningProblem, SynchronizationRule, Term, end, start
from ..words import Event, EventSet, Symbol, events

logger = logging.getLogger(__name__)

Progress = FrozenSet[int]


@dataclass(frozen=True, eq=False)
class RuleDag:
    """Labelled DAG of one rule; compared by identity."""

    index: int
    label: str
    rule: SynchronizationRule
    closure: ClauseClosure
    nodes: Tuple[FrozenSet[Term], ...]
    arcs: FrozenSet[Tuple[int, int]]
    strict_arcs: FrozenSet[Tuple[int, int]]
    labels: Tuple[EventSet, ...]
    preds: Tuple[FrozenSet[int], ...]
    strict_preds: Tuple[FrozenSet[int], ...]
    order: Tuple[int, ...]
    trigger_node: Optional[int]
    trigger_event: Optional[Event]
    anchored: Progress
    watched: Tuple[Tuple[str, int, int, Event], ...]

    @property
    def all_nodes(self) -> Progress:
        return frozenset(range(len(self.nodes)))

    def node_of(self, term: Term) -> int:
        return self.closure.class_index(term)

    def node_name(self, node: int) -> str:
        return "{" + ", ".join(sorted(str(t) for t in self.nodes[node])) + "}"

    # ------------------------------------------------------------------
    # Viewpoint operations on progress sets
    # ------------------------------------------------------------------

    def next(self, progress: Progress) -> Progress:
        """Largest downward-closed extension with no solid arc inside the added part."""
        grown = set(progress)
        for n in self.order:
            if n in grown:
                continue
            if self.preds[n] <= grown and not any(p in grown and p not in progress for p in self.strict_preds[n]):
                grown.add(n)
        return frozenset(grown)

    def consumed(self, progress: Progress, evs: EventSet) -> Progress:
        """Largest downward-closed part of next() whose added labels all occur in evs."""
        candidates = self.next(progress)
        grown = set(progress)
        for n in self.order:
            if n in grown or n not in candidates:
                continue
            if self.preds[n] <= grown and self.labels[n] <= evs:
                grown.add(n)
        return frozenset(grown)

    def waiting(self, progress: Progress) -> FrozenSet[Term]:
        """End terms of started tokens whose ending must not be overlooked."""
        return frozenset(
            end(name) for name, s, e, _ in self.watched if s in progress and e not in progress
        )

    def waiting_events(self, progress: Progress) -> EventSet:
        return frozenset(ev for _, s, e, ev in self.watched if s in progress and e not in progress)

    def compatible(self, progress: Progress, evs: EventSet, consumed: Optional[Progress] = None) -> bool:
        if consumed is None:
            consumed = self.consumed(progress, evs)
        pending = self.waiting_events(progress) & evs
        if not pending:
            return True
        absorbed = set()
        for n in consumed - progress:
            absorbed |= self.labels[n]
        return pending <= absorbed

    def detached(self, progress: Progress) -> Progress:
        """Part of progress not ordered after the trigger start."""
        return progress - self.anchored

    def is_enabled(self, progress: Progress) -> bool:
        return self.trigger_node is None or self.trigger_node in progress

    def is_final(self, progress: Progress) -> bool:
        return len(progress) == len(self.nodes)

    def viewpoint_bound(self) -> int:
        """Longest chain of distinct progress sets: nodes + 1."""
        return len(self.nodes) + 1


def _watch_list(rule: SynchronizationRule, cl: ClauseClosure, event_of) -> Tuple[Tuple[str, int, int, Event], ...]:
    out = []
    names = sorted({t.token for t in cl.terms})
    for name in names:
        s, e = start(name), end(name)
        if not (cl.occurs(s) and cl.occurs(e)):
            continue
        start_class = cl.class_of(s)
        watch = name == rule.trigger_name or len(start_class) > 1
        if not watch:
            watch = any(
                cl.leq(s, t) and t not in start_class and not cl.leq(e, t) for t in cl.terms
            )
        if watch:
            out.append((name, cl.class_index(s), cl.class_index(e), event_of(e)))
    return tuple(out)


def build_dag(rule: SynchronizationRule, index: int = 0, label: str = "") -> RuleDag:
    """
    Build the labelled DAG of a single-disjunct rule.

    Args:
        rule: Rule with exactly one disjunct and a consistent clause
        index: Position of the rule in its problem
        label: Human-facing rule name

    Raises:
        DisjunctiveRuleError: If the rule has more than one disjunct
        InconsistentClauseError: If the closed clause derives t < t
    """
    if len(rule.disjuncts) != 1:
        raise DisjunctiveRuleError(f"rule {label or rule.label or index} has {len(rule.disjuncts)} disjuncts")
    cl = rule_closure(rule)
    if not cl.consistent:
        raise InconsistentClauseError(f"rule {label or rule.label or index} has an inconsistent clause")

    patterns = rule.patterns(0)

    def event_of(term: Term) -> Event:
        p = patterns[term.token]
        return Event(term.endpoint, p.var, p.value)

    arcs: Set[Tuple[int, int]] = set()
    strict_arcs: Set[Tuple[int, int]] = set()
    for t, u in cl.le:
        i, j = cl.class_index(t), cl.class_index(u)
        if i == j:
            continue
        arcs.add((i, j))
        if (t, u) in cl.lt:
            strict_arcs.add((i, j))

    count = len(cl.classes)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(count))
    graph.add_edges_from(arcs)
    order = tuple(nx.lexicographical_topological_sort(graph))

    preds = tuple(frozenset(i for i, j in arcs if j == n) for n in range(count))
    strict_preds = tuple(frozenset(i for i, j in strict_arcs if j == n) for n in range(count))
    labels = tuple(frozenset(event_of(t) for t in cls) for cls in cl.classes)

    trigger_node = None
    trigger_event = None
    if rule.trigger is not None:
        trigger_node = cl.class_index(start(rule.trigger.name))
        trigger_event = Event(Endpoint.START, rule.trigger.var, rule.trigger.value)
        anchored = frozenset(nx.descendants(graph, trigger_node) | {trigger_node})
    else:
        anchored = frozenset()

    return RuleDag(
        index=index,
        label=label or rule.label or f"R{index + 1}",
        rule=rule,
        closure=cl,
        nodes=cl.classes,
        arcs=frozenset(arcs),
        strict_arcs=frozenset(strict_arcs),
        labels=labels,
        preds=preds,
        strict_preds=strict_preds,
        order=order,
        trigger_node=trigger_node,
        trigger_event=trigger_event,
        anchored=anchored,
        watched=_watch_list(rule, cl, event_of),
    )


# ============================================================================
# Viewpoints
# ============================================================================


@dataclass(frozen=True)
class Viewpoint:
    dag: RuleDag
    progress: Progress = frozenset()

    @property
    def initial(self) -> bool:
        return not self.progress

    @property
    def final(self) -> bool:
        return self.dag.is_final(self.progress)

    @property
    def enabled(self) -> bool:
        return self.dag.is_enabled(self.progress)

    def __str__(self) -> str:
        inner = ", ".join(self.dag.node_name(n) for n in sorted(self.progress))
        return f"{self.dag.label}<{inner}>"


def _as_events(symbol: Union[Symbol, EventSet]) -> EventSet:
    return events(symbol) if isinstance(symbol, Symbol) else frozenset(symbol)


def next_nodes(vp: Viewpoint) -> Progress:
    return vp.dag.next(vp.progress)


def consumed(vp: Viewpoint, symbol: Union[Symbol, EventSet]) -> Progress:
    return vp.dag.consumed(vp.progress, _as_events(symbol))


def waiting(vp: Viewpoint) -> FrozenSet[Term]:
    return vp.dag.waiting(vp.progress)


def vp_compatible(vp: Viewpoint, symbol: Union[Symbol, EventSet]) -> bool:
    return vp.dag.compatible(vp.progress, _as_events(symbol))


def evolve(vp: Viewpoint, symbol: Union[Symbol, EventSet]) -> Optional[Viewpoint]:
    """The viewpoint after reading symbol, or None when incompatible."""
    evs = _as_events(symbol)
    cons = vp.dag.consumed(vp.progress, evs)
    if not vp.dag.compatible(vp.progress, evs, cons):
        return None
    return Viewpoint(vp.dag, cons)


def enables(symbol: Union[Symbol, EventSet], vp: Viewpoint) -> bool:
    """Whether reading symbol matches the trigger start in this viewpoint."""
    node = vp.dag.trigger_node
    if node is None or node in vp.progress:
        return False
    return node in vp.dag.consumed(vp.progress, _as_events(symbol))


# ============================================================================
# States
# ============================================================================


class RuleMarker(Enum):
    SINK = "sink"

    def __repr__(self) -> str:
        return "RULE_SINK"


RULE_SINK = RuleMarker.SINK

RuleState = Union[RuleMarker, FrozenSet[Viewpoint]]


def build_dags(problem: PlanningProblem) -> Tuple[RuleDag, ...]:
    """
    DAGs of every rule, token names renamed apart.

    Raises:
        NonEagerProblemError: If some rule is not eager
    """
    reports = classify_problem(problem)
    if not all(r.eager for r in reports):
        raise NonEagerProblemError(reports)
    labels = problem.rule_labels()
    return tuple(
        build_dag(rule, i, labels[i]) for i, rule in enumerate(problem.scoped_rules())
    )


def initial_state(dags: Iterable[RuleDag]) -> RuleState:
    return frozenset(Viewpoint(dag) for dag in dags)


def ap_initial(problem: PlanningProblem) -> RuleState:
    return initial_state(build_dags(problem))


def ap_step(state: RuleState, symbol: Union[Symbol, EventSet]) -> RuleState:
    """
    One transition of the rule automaton.

    SINK when a viewpoint is incompatible with the symbol, or when a rule's
    trigger starts and no viewpoint of that rule is enabled by the symbol.
    Otherwise every viewpoint evolves. A viewpoint enabled by the symbol is
    also kept for later trigger occurrences, advanced by the part of its
    evolution that is not ordered after the trigger start, so tokens matched
    alongside this trigger stay available to the next one.
    """
    if state is RULE_SINK:
        return RULE_SINK
    evs = _as_events(symbol)
    out: Set[Viewpoint] = set()
    covered: Set[int] = set()
    fired: Set[int] = set()
    for vp in state:
        dag = vp.dag
        if dag.trigger_event is not None and dag.trigger_event in evs:
            fired.add(dag.index)
        cons = dag.consumed(vp.progress, evs)
        if not dag.compatible(vp.progress, evs, cons):
            return RULE_SINK
        out.add(Viewpoint(dag, cons))
        node = dag.trigger_node
        if node is not None and node in cons and node not in vp.progress:
            out.add(Viewpoint(dag, dag.detached(cons)))
            covered.add(dag.index)
    if fired - covered:
        return RULE_SINK
    return frozenset(out)


def ap_final(state: RuleState) -> bool:
    """Every enabled viewpoint has matched all of its nodes."""
    if state is RULE_SINK:
        return False
    return all(vp.final for vp in state if vp.enabled)


def ap_accepts(state: RuleState, closing: EventSet) -> bool:
    """Finality after reading the token endings that close the word."""
    return ap_final(ap_step(state, closing))


def viewpoint_counts(state: RuleState) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    if state is RULE_SINK:
        return counts
    for vp in state:
        counts[vp.dag.index] = counts.get(vp.dag.index, 0) + 1
    return counts


def satisfies_linearity(state: RuleState) -> bool:
    """Viewpoints of each rule are totally ordered by progress inclusion."""
    if state is RULE_SINK:
        return True
    by_rule: Dict[int, List[Progress]] = {}
    for vp in state:
        by_rule.setdefault(vp.dag.index, []).append(vp.progress)
    for chain in by_rule.values():
        chain.sort(key=len)
        for smaller, larger in zip(chain, chain[1:]):
            if not smaller <= larger:
                return False
    return True


class RuleAutomaton:
    """Memoising wrapper around ap_step for one problem."""

    def __init__(self, problem: PlanningProblem, cache_size: int = TRANSITION_CACHE_SIZE):
        """
        Raises:
            NonEagerProblemError: If some rule of the problem is not eager
        """
        self.dags = build_dags(problem)
        self.cache = TransitionCache(cache_size)
        self._interned: Dict[RuleState, RuleState] = {RULE_SINK: RULE_SINK}
        logger.debug(
            "rule automaton: %d rules, %s nodes",
            len(self.dags),
            [len(d.nodes) for d in self.dags],
        )

    @property
    def initial(self) -> RuleState:
        return self.intern(initial_state(self.dags))

    def intern(self, state: RuleState) -> RuleState:
        return self._interned.setdefault(state, state)

    @property
    def states_seen(self) -> int:
        return len(self._interned)

    def step(self, state: RuleState, symbol: Union[Symbol, EventSet]) -> RuleState:
        evs = _as_events(symbol)
        key = (state, evs)
        cached = self.cache.get(key)
        if cached is not None:
            return cached
        succ = self.intern(ap_step(state, evs))
        self.cache.set(key, succ)
        return succ

    def run(self, symbols: Iterable[Symbol]) -> RuleState:
        state = self.initial
        for symbol in symbols:
            state = self.step(state, symbol)
            if state is RULE_SINK:
                break
        return state

    def accepts(self, state: RuleState, closing: EventSet) -> bool:
        return ap_final(self.step(state, closing))

    def viewpoint_bounds(self) -> Dict[int, int]:
        return {d.index: d.viewpoint_bound() for d in self.dags}
