"""
Plan existence by breadth-first search over the product automaton.

Features:
- Symbols generated in canonical order, so the first accepting word found
  is the lexicographically least among the shortest
- Parent pointers for witness reconstruction
- Every witness is decoded and re-verified by the semantic oracle
- Explicit "budget_exhausted" status, never confused with "empty"
- Exhaustive language cross-check against the oracle for small problems
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx

from .automata.plan_automaton import SINK
from .automata.product import ProductAutomaton, ProductState
from .budget import SearchBudget
from .config import SMOKE_MAX_LEN
from .errors import ProblemValidationError, SoundnessError
from .metrics import RunMetrics
from .models import Plan, PlanningProblem, StateVariable
from .oracle import validate_plan, validate_problem, verify_solution
from .words import Change, KEEP, Symbol, Word, decode, format_word

logger = logging.getLogger(__name__)

SOLUTION = "solution"
EMPTY = "empty"
BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class SolveResult:
    """Outcome of find_solution."""

    status: str
    word: Optional[Word] = None
    plan: Optional[Plan] = None
    stats: Dict[str, Any] = field(default_factory=dict)
    explored: Optional[nx.MultiDiGraph] = field(default=None, repr=False)
    product: Optional[ProductAutomaton] = field(default=None, repr=False)

    @property
    def found(self) -> bool:
        return self.status == SOLUTION

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "word": format_word(self.word).splitlines() if self.word is not None else None,
            "plan": self.plan.to_dict() if self.plan is not None else None,
            "stats": dict(self.stats),
        }


def _require_valid(problem: PlanningProblem) -> None:
    violations = validate_problem(problem)
    if violations:
        raise ProblemValidationError(violations)


def _reconstruct(
    parents: Dict[ProductState, Tuple[Optional[ProductState], Optional[Symbol]]],
    state: ProductState,
    variables: Tuple[str, ...],
) -> Word:
    symbols: List[Symbol] = []
    while True:
        parent, symbol = parents[state]
        if parent is None:
            break
        symbols.append(symbol)
        state = parent
    return Word(tuple(reversed(symbols)), variables)


def _certify(problem: PlanningProblem, word: Word) -> Plan:
    plan = decode(word)
    if plan is None:
        raise SoundnessError(f"witness does not decode:\n{format_word(word)}")
    violations = validate_plan(problem, plan)
    if violations:
        raise SoundnessError(f"witness decodes to an invalid plan: {violations[0]}")
    report = verify_solution(problem, plan)
    if not report.is_solution:
        raise SoundnessError(f"witness violates rules {report.failing_rules}")
    return plan


def find_solution(
    problem: PlanningProblem,
    max_states: Optional[int] = None,
    max_len: Optional[int] = None,
    record: bool = False,
) -> SolveResult:
    """
    Search for the shortest solution plan (horizon >= 1).

    Args:
        problem: Eager planning problem
        max_states: Product-state budget (config default when None)
        max_len: Word-length budget (config default when None)
        record: Keep the explored product fragment (and its automaton) on the result

    Returns:
        SolveResult with status "solution", "empty" or "budget_exhausted"

    Raises:
        ProblemValidationError: If the problem is malformed
        NonEagerProblemError: If some rule is not eager
        SoundnessError: If a witness fails oracle verification
    """
    _require_valid(problem)
    product = ProductAutomaton(problem)
    budget = SearchBudget.from_limits(max_states, max_len)
    metrics = RunMetrics()
    names = product.plan.names

    start = product.initial
    parents: Dict[ProductState, Tuple[Optional[ProductState], Optional[Symbol]]] = {start: (None, None)}
    graph = nx.MultiDiGraph() if record else None
    if graph is not None:
        graph.add_node(start)
    budget.charge_state()
    frontier = [start]
    depth = 0

    def finish(status: str, word: Optional[Word] = None, plan: Optional[Plan] = None) -> SolveResult:
        stats = metrics.snapshot()
        stats.update(
            states_explored=len(parents),
            depth=depth,
            limit_hit=budget.limit_hit,
            cache=product.cache_stats(),
        )
        logger.info("solve finished: %s after %d states", status, len(parents))
        return SolveResult(status, word, plan, stats, graph, product if record else None)

    while frontier:
        metrics.peak("frontier_peak", len(frontier))
        logger.debug("layer %d: %d states", depth, len(frontier))
        if not budget.allows_depth(depth):
            if any(succ not in parents for state in frontier for _, succ in product.successors(state)):
                budget.trip_length()
            break
        layer: List[ProductState] = []
        for state in frontier:
            for symbol, succ in product.successors(state):
                metrics.incr("transitions")
                if graph is not None:
                    graph.add_edge(state, succ, symbol=symbol)
                if succ in parents:
                    continue
                parents[succ] = (state, symbol)
                product.check_bounds(succ)
                if product.is_final(succ):
                    depth += 1
                    word = _reconstruct(parents, succ, names)
                    if graph is not None:
                        graph.graph["accepting"] = succ
                    plan = _certify(problem, word)
                    return finish(SOLUTION, word, plan)
                if not budget.charge_state():
                    return finish(BUDGET_EXHAUSTED)
                layer.append(succ)
        frontier = layer
        depth += 1

    return finish(BUDGET_EXHAUSTED if budget.tripped else EMPTY)


# ============================================================================
# Language cross-check
# ============================================================================


@dataclass
class SmokeReport:
    """Automaton/oracle agreement over every enumerated word."""

    max_len: int
    words_checked: int = 0
    accepted: int = 0
    pruned: int = 0
    mismatches: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_len": self.max_len,
            "words_checked": self.words_checked,
            "accepted": self.accepted,
            "pruned": self.pruned,
            "mismatches": list(self.mismatches),
        }


def _domain_symbols(variables: Tuple[StateVariable, ...]) -> Tuple[List[Symbol], List[Symbol]]:
    """Initial and non-initial symbols whose values lie in each variable's own domain."""
    names = [v.name for v in variables]
    initial = [
        Symbol.initial_of(dict(zip(names, combo)))
        for combo in itertools.product(*[v.values for v in variables])
    ]
    options = [[KEEP] + [Change(a, b) for a in v.values for b in v.values] for v in variables]
    later = [Symbol(tuple(zip(names, combo)), False) for combo in itertools.product(*options)]
    return initial, later


def oracle_accepts(problem: PlanningProblem, word: Word) -> bool:
    """Whether the word decodes to a valid plan that solves the problem."""
    plan = decode(word)
    if plan is None or validate_plan(problem, plan):
        return False
    return verify_solution(problem, plan).is_solution


def language_smoke(problem: PlanningProblem, max_len: int = SMOKE_MAX_LEN) -> SmokeReport:
    """
    Compare product acceptance with the oracle on in-domain words up to max_len.

    Words range over symbols whose values lie in each variable's domain, not
    over the full alphabet; out-of-domain symbols are rejected by the plan
    automaton alone and are not enumerated.
    Only prefixes that encode a plan are extended; a word whose last symbol
    breaks the encoding is still checked, and its extensions are counted in
    `pruned` (the encoding cannot recover).

    Raises:
        NonEagerProblemError: If some rule is not eager
    """
    _require_valid(problem)
    product = ProductAutomaton(problem)
    variables = product.plan.variables
    names = product.plan.names
    initial_symbols, later_symbols = _domain_symbols(variables)
    report = SmokeReport(max_len=max_len)

    def check(symbols: Tuple[Symbol, ...], state: ProductState) -> None:
        word = Word(symbols, names)
        automaton = product.is_final(state)
        oracle = oracle_accepts(problem, word)
        report.words_checked += 1
        report.accepted += int(automaton)
        if automaton != oracle:
            report.mismatches.append(
                {"word": format_word(word).splitlines(), "automaton": automaton, "oracle": oracle}
            )

    def extensions(length: int) -> int:
        return sum(len(later_symbols) ** k for k in range(1, max_len - length + 1))

    def walk(symbols: Tuple[Symbol, ...], state: ProductState, plan_state) -> None:
        check(symbols, state)
        if len(symbols) >= max_len:
            return
        pool = initial_symbols if not symbols else later_symbols
        for symbol in pool:
            next_plan = product.plan.step(plan_state, symbol)
            next_state = product.step(state, symbol)
            if next_plan is SINK:
                check(symbols + (symbol,), next_state)
                report.pruned += extensions(len(symbols) + 1)
                continue
            walk(symbols + (symbol,), next_state, next_plan)

    walk((), product.initial, product.plan.initial)
    logger.info(
        "language smoke: %d words, %d accepted, %d mismatches",
        report.words_checked,
        report.accepted,
        len(report.mismatches),
    )
    return report
