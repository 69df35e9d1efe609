"""
Intersection of the plan-shape automaton and the rule automaton.

A product state is accepting when the plan part is not the sink and the rule
part is final after reading the closing events of the plan part (the ends
of the tokens still open at the end of the word).
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

from ..config import TRANSITION_CACHE_SIZE
from ..models import PlanningProblem
from ..words import Symbol, Word
from .plan_automaton import SINK, PlanAutomaton, PlanState
from .rule_automaton import RULE_SINK, RuleAutomaton, RuleState, satisfies_linearity, viewpoint_counts

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProductState:
    plan_part: PlanState
    rule_part: RuleState

    @property
    def is_sink(self) -> bool:
        return self.plan_part is SINK or self.rule_part is RULE_SINK


PRODUCT_SINK = ProductState(SINK, RULE_SINK)


class ProductAutomaton:
    """Lazily explored product of the two automata for one eager problem."""

    def __init__(self, problem: PlanningProblem, cache_size: int = TRANSITION_CACHE_SIZE):
        """
        Raises:
            NonEagerProblemError: If some rule of the problem is not eager
        """
        self.problem = problem
        self.plan = PlanAutomaton(problem.variables, cache_size)
        self.rules = RuleAutomaton(problem, cache_size)

    @property
    def initial(self) -> ProductState:
        return ProductState(self.plan.initial, self.rules.initial)

    def step(self, state: ProductState, symbol: Symbol) -> ProductState:
        if state.is_sink:
            return PRODUCT_SINK
        plan_part = self.plan.step(state.plan_part, symbol)
        if plan_part is SINK:
            return PRODUCT_SINK
        rule_part = self.rules.step(state.rule_part, symbol)
        if rule_part is RULE_SINK:
            return PRODUCT_SINK
        return ProductState(plan_part, rule_part)

    def is_final(self, state: ProductState) -> bool:
        if state.is_sink:
            return False
        return self.rules.accepts(state.rule_part, self.plan.closing_events(state.plan_part))

    def run(self, word: Word) -> ProductState:
        state = self.initial
        for symbol in word.symbols:
            state = self.step(state, symbol)
            if state.is_sink:
                break
        return state

    def accepts(self, word: Word) -> bool:
        return self.is_final(self.run(word))

    def successors(self, state: ProductState) -> Iterator[Tuple[Symbol, ProductState]]:
        """Non-sink successors in canonical symbol order."""
        for symbol in self.plan.compatible_symbols(state.plan_part):
            succ = self.step(state, symbol)
            if not succ.is_sink:
                yield symbol, succ

    def check_bounds(self, state: ProductState) -> None:
        """Assert linearity and the per-rule viewpoint bound on a reachable state."""
        if state.is_sink:
            return
        assert satisfies_linearity(state.rule_part), f"linearity violated in {state}"
        bounds = self.rules.viewpoint_bounds()
        for index, count in viewpoint_counts(state.rule_part).items():
            assert count <= bounds[index], f"rule {index}: {count} viewpoints > {bounds[index]}"

    def cache_stats(self) -> dict:
        return {"plan": self.plan.cache.stats(), "rules": self.rules.cache.stats()}


def product_accepts(problem: PlanningProblem, word: Word) -> bool:
    """Whether the word encodes a solution plan, decided by the automata alone."""
    return ProductAutomaton(problem).accepts(word)
