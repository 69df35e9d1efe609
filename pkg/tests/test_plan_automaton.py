"""Tests for the plan-shape automaton."""

import pytest

from planner.automata.plan_automaton import INIT, SINK, PlanAutomaton, Snapshot, accepts
from planner.models import PlanningProblem, StateVariable
from planner.oracle import validate_plan
from planner.words import KEEP, Change, Symbol, Word, all_words, decode, encode, end_event


def encodes_a_plan(variables, word: Word) -> bool:
    plan = decode(word)
    return plan is not None and validate_plan(PlanningProblem(tuple(variables)), plan) == []


@pytest.mark.parametrize(
    "variables, max_len",
    [
        ([StateVariable.of("x", ["a", "b"])], 5),
        ([StateVariable.of("x", ["a", "b"], {"a": ["b"], "b": []})], 5),
        ([StateVariable.of("x", ["a", "b"]), StateVariable.of("y", ["a"])], 3),
    ],
    ids=["free", "one-shot", "two-vars"],
)
def test_accepts_exactly_the_plan_encodings(variables, max_len):
    automaton = PlanAutomaton(variables)
    checked = 0
    for word in all_words(variables, max_len):
        assert automaton.accepts(word) == encodes_a_plan(variables, word), word
        checked += 1
    assert checked > 0


def test_running_plan_is_accepted(running_variables, running_plan):
    automaton = PlanAutomaton(running_variables)
    state = automaton.run(encode(running_plan).symbols)
    assert isinstance(state, Snapshot)
    assert state.current_values() == {"x0": "idle", "x1": "v1", "x2": "idle"}
    assert automaton.closing_events(state) == frozenset(
        {end_event("x0", "idle"), end_event("x1", "v1"), end_event("x2", "idle")}
    )


def test_empty_word_is_accepted(running_variables):
    assert accepts(running_variables, Word((), ("x0", "x1", "x2")))
    assert PlanAutomaton(running_variables).closing_events(INIT) == frozenset()


def test_forbidden_transition_sinks():
    x = StateVariable.of("x", ["a", "b"], {"a": ["b"], "b": []})
    automaton = PlanAutomaton([x])
    state = automaton.step(INIT, Symbol.initial_of({"x": "b"}))
    assert automaton.step(state, Symbol.of({"x": Change("b", "a")})) is SINK
    assert automaton.step(SINK, Symbol.of({"x": KEEP})) is SINK
    assert not automaton.is_final(SINK)


def test_initial_value_outside_domain_sinks():
    automaton = PlanAutomaton([StateVariable.of("x", ["a"])])
    assert automaton.step(INIT, Symbol.initial_of({"x": "b"})) is SINK


def test_states_are_interned():
    automaton = PlanAutomaton([StateVariable.of("x", ["a", "b"])])
    first = automaton.step(INIT, Symbol.initial_of({"x": "a"}))
    again = automaton.step(first, Symbol.of({"x": KEEP}))
    assert again is first


def test_compatible_symbols_never_sink(running_variables):
    automaton = PlanAutomaton(running_variables)
    initial = list(automaton.compatible_symbols(INIT))
    assert len(initial) == 2 * 3 * 2
    state = automaton.step(INIT, initial[0])
    later = list(automaton.compatible_symbols(state))
    assert len(later) == 3 * 4 * 3
    assert later[0].entries == (("x0", KEEP), ("x1", KEEP), ("x2", KEEP))
    assert all(automaton.step(state, s) is not SINK for s in later)


def test_reachable_states_within_bound():
    automaton = PlanAutomaton([StateVariable.of("x", ["a", "b"])])
    graph = automaton.reachable_graph()
    assert graph.number_of_nodes() == 6
    assert graph.number_of_nodes() <= automaton.state_bound() == 9


def test_reachable_graph_options(running_variables):
    automaton = PlanAutomaton(running_variables)
    assert SINK not in automaton.reachable_graph(include_sink=False)
    assert automaton.reachable_graph(max_states=5).number_of_nodes() == 5
