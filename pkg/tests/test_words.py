"""Tests for words over the plan alphabet."""

import random

import pytest

from planner.errors import ProblemSyntaxError, SymbolError, WordShapeError
from planner.models import Plan, PlanningProblem, StateVariable
from planner.words import (
    KEEP,
    Change,
    Symbol,
    Word,
    alphabet_size,
    all_words,
    decode,
    encode,
    end_event,
    events,
    format_word,
    initial_alphabet,
    non_initial_alphabet,
    parse_word,
    start_event,
    triggers,
)


def random_plan(rng: random.Random) -> Plan:
    horizon = rng.randint(1, 8)
    segments = {}
    for i in range(rng.randint(1, 3)):
        cuts = sorted(rng.sample(range(1, horizon), rng.randint(0, horizon - 1))) if horizon > 1 else []
        bounds = [0, *cuts, horizon]
        segments[f"x{i}"] = [(rng.choice(["a", "b", "c"]), hi - lo) for lo, hi in zip(bounds, bounds[1:])]
    return Plan.from_segments(segments)


def test_decode_inverts_encode_on_random_plans():
    rng = random.Random(2024)
    for _ in range(1000):
        plan = random_plan(rng)
        word = encode(plan)
        assert len(word) == plan.horizon
        assert decode(word) == plan


def test_running_plan_word(running_plan):
    word = encode(running_plan)
    assert len(word) == 6
    assert word[0].initial
    assert word[1].entry("x0") == Change("idle", "v0")
    assert word[1].entry("x1") is KEEP
    assert word[3].entry("x2") == Change("v1", "v1")
    assert events(word[4]) == frozenset({end_event("x0", "v0"), start_event("x0", "idle")})


def test_empty_word_is_empty_plan():
    word = Word((), ("x", "y"))
    plan = decode(word)
    assert plan.horizon == 0
    assert plan.variables == ("x", "y")
    assert encode(plan) == word


def test_decode_rejects_mismatched_change():
    word = Word(
        (
            Symbol.initial_of({"x": "a"}),
            Symbol.of({"x": Change("b", "a")}),
        )
    )
    assert decode(word) is None


def test_triggers_on_start_events(cover_rule, running_plan):
    word = encode(running_plan)
    assert [i for i, s in enumerate(word) if triggers(s, cover_rule)] == [1]


def test_symbol_shape_errors():
    with pytest.raises(SymbolError):
        Symbol((("y", KEEP), ("x", KEEP)), False)
    with pytest.raises(SymbolError):
        Symbol((("x", KEEP),), True)
    with pytest.raises(SymbolError):
        Symbol((("x", Change(None, "a")),), False)


def test_word_shape_errors():
    first = Symbol.initial_of({"x": "a"})
    with pytest.raises(WordShapeError):
        Word((first, first))
    with pytest.raises(WordShapeError):
        Word((Symbol.of({"x": KEEP}),))
    with pytest.raises(WordShapeError):
        Word((first, Symbol.of({"y": KEEP})))


def test_text_form():
    text = "x:->a | y:->b\nx:a>c | y:.\n"
    word = parse_word(text)
    assert word.variables == ("x", "y")
    assert word[1].entry("y") is KEEP
    assert format_word(word) == text


def test_text_form_skips_comments():
    word = parse_word("# initial\nx:->a\n\nx:. # nothing\n")
    assert len(word) == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("x:->a\nx:a>>b\n", 2),
        ("x:->a | x:->b\n", 1),
        ("x:->a | y:.\n", 1),
    ],
)
def test_text_form_errors(text, line):
    with pytest.raises(ProblemSyntaxError) as info:
        parse_word(text)
    assert info.value.line == line


def test_alphabet_size_matches_enumeration():
    variables = [StateVariable.of("x", ["a", "b"]), StateVariable.of("y", ["a", "c"])]
    enumerated = len(list(initial_alphabet(variables))) + len(list(non_initial_alphabet(variables)))
    assert alphabet_size(variables) == enumerated == 3**2 + 10**2


def test_alphabet_follows_the_problem_value_universe(running_variables):
    universe = PlanningProblem(running_variables).value_universe()
    initial = list(initial_alphabet(running_variables))
    assert len(initial) == len(universe) ** len(running_variables)
    assert {entry.started for s in initial for _, entry in s.entries} == set(universe)


def test_all_words_counts_every_length():
    variables = [StateVariable.of("x", ["a", "b"])]
    assert sum(1 for _ in all_words(variables, 2)) == 1 + 2 * (1 + 5)
