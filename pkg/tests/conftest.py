"""Shared fixtures: the running-example rules, their plan, and small problems."""

from pathlib import Path

import pytest

from planner.models import (
    Atom,
    ExistentialStatement,
    Plan,
    PlanningProblem,
    StateVariable,
    SynchronizationRule,
    TokenPattern,
    end,
    equals,
    leq,
    start,
)

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def make_rule(trigger, quantifiers, atoms, label=""):
    """Single-disjunct rule from (name, var, value) triples."""
    head = TokenPattern(*trigger) if trigger is not None else None
    statement = ExistentialStatement(tuple(TokenPattern(*q) for q in quantifiers), frozenset(atoms))
    return SynchronizationRule(head, (statement,), label)


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES


# ============================================================================
# Running example
# ============================================================================


@pytest.fixture
def cover_rule() -> SynchronizationRule:
    """a0[x0=v0] => exists a1[x1=v1]. start(a0) <= start(a1) & end(a0) <= end(a1)"""
    return make_rule(
        ("a0", "x0", "v0"),
        [("a1", "x1", "v1")],
        [leq(start("a0"), start("a1")), leq(end("a0"), end("a1"))],
        "cover",
    )


@pytest.fixture
def straddle_rule() -> SynchronizationRule:
    """a3 starts inside the trigger and ends after it."""
    return make_rule(
        ("a0", "x0", "v0"),
        [("a3", "x2", "v1")],
        [
            leq(start("a0"), start("a3")),
            leq(start("a3"), end("a0")),
            leq(end("a0"), end("a3")),
        ],
        "straddle",
    )


@pytest.fixture
def running_variables():
    return (
        StateVariable.of("x0", ["idle", "v0"]),
        StateVariable.of("x1", ["idle", "v1", "v2"]),
        StateVariable.of("x2", ["idle", "v1"]),
    )


@pytest.fixture
def running_plan() -> Plan:
    """v0 on x0 over [1,4); x1 has v1 at [2,3) and [5,6); x2 has v1 at [2,3) and [3,5)."""
    return Plan.from_segments(
        {
            "x0": [("idle", 1), ("v0", 3), ("idle", 2)],
            "x1": [("idle", 2), ("v1", 1), ("v2", 2), ("v1", 1)],
            "x2": [("idle", 2), ("v1", 1), ("v1", 2), ("idle", 1)],
        }
    )


@pytest.fixture
def cover_problem(running_variables, cover_rule) -> PlanningProblem:
    return PlanningProblem(running_variables, (cover_rule,))


@pytest.fixture
def straddle_problem(running_variables, straddle_rule) -> PlanningProblem:
    return PlanningProblem(running_variables, (straddle_rule,))


# ============================================================================
# Micro problems (at most 2 variables, 3 values, 2 eager rules)
# ============================================================================


def micro_meets() -> PlanningProblem:
    """Every v0 token is immediately followed by a v1 token."""
    x = StateVariable.of("x", ["v0", "v1"], {"v0": ["v1"], "v1": ["v0", "v1"]})
    rule = make_rule(
        ("a0", "x", "v0"),
        [("a1", "x", "v1")],
        [Atom(start("a0"), end("a0"), strict=True), *equals(end("a0"), start("a1"))],
        "meets",
    )
    return PlanningProblem((x,), (rule,))


def micro_one_shot() -> PlanningProblem:
    """Two one-shot variables; x must reach v1 and y holds w1 from its start."""
    x = StateVariable.of("x", ["v0", "v1"], {"v0": ["v1"], "v1": []})
    y = StateVariable.of("y", ["w0", "w1"], {"w0": ["w1"], "w1": []})
    sync = make_rule(
        ("a0", "x", "v1"),
        [("a1", "y", "w1")],
        [*equals(start("a0"), start("a1")), leq(end("a1"), end("a0"))],
        "sync",
    )
    goal = make_rule(None, [("t", "x", "v1")], [], "goal")
    return PlanningProblem((x, y), (sync, goal))


def micro_running() -> PlanningProblem:
    """The eager running-example rule over alternating two-value variables."""
    x0 = StateVariable.of("x0", ["idle", "v0"], {"idle": ["v0"], "v0": ["idle"]})
    x1 = StateVariable.of("x1", ["v1", "v2"], {"v1": ["v2"], "v2": ["v1"]})
    rule = make_rule(
        ("a0", "x0", "v0"),
        [("a1", "x1", "v1")],
        [leq(start("a0"), start("a1")), leq(end("a0"), end("a1"))],
        "cover",
    )
    return PlanningProblem((x0, x1), (rule,))


def unsat_problem() -> PlanningProblem:
    """x must hold v1 somewhere, but every v1 token must coincide with a v0 token."""
    x = StateVariable.of("x", ["v0", "v1"])
    clash = make_rule(
        ("a0", "x", "v1"),
        [("a1", "x", "v0")],
        [*equals(start("a0"), start("a1")), *equals(end("a0"), end("a1"))],
        "clash",
    )
    goal = make_rule(None, [("t", "x", "v1")], [], "goal")
    return PlanningProblem((x,), (clash, goal))


MICRO_PROBLEMS = {
    "meets": micro_meets,
    "one_shot": micro_one_shot,
    "running": micro_running,
}


@pytest.fixture(params=sorted(MICRO_PROBLEMS))
def micro_problem(request) -> PlanningProblem:
    return MICRO_PROBLEMS[request.param]()


@pytest.fixture
def unsat() -> PlanningProblem:
    return unsat_problem()
