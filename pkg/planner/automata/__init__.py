"""Deterministic automata over plan words: plan shape, rule progress, and their product."""

from .plan_automaton import INIT, SINK, PlanAutomaton, Snapshot
from .rule_automaton import RuleAutomaton, RuleDag, Viewpoint, build_dag
from .product import ProductAutomaton, ProductState, product_accepts

__all__ = [
    "INIT",
    "SINK",
    "PlanAutomaton",
    "Snapshot",
    "RuleAutomaton",
    "RuleDag",
    "Viewpoint",
    "build_dag",
    "ProductAutomaton",
    "ProductState",
    "product_accepts",
]
