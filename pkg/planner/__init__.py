"""
Eager qualitative timeline-based planning.

Problems are parsed from problem files (planner.dsl), classified for
eagerness (planner.eagerness), and solved through the product of a
plan-shape automaton and per-rule automata (planner.automata,
planner.solver). planner.oracle decides solutions directly on plans.
"""

__version__ = "0.1.0"
