"""Tests for the problem-file parser and printer."""

import pytest

from planner.bpmn import emergency_department_problem
from planner.dsl import format_problem, format_rule, load_problem, parse_problem
from planner.errors import ProblemSyntaxError
from planner.models import Atom, end, start
from planner.oracle import validate_problem

from .conftest import MICRO_PROBLEMS, make_rule, micro_one_shot, unsat_problem


def test_running_sample(samples_dir, cover_problem):
    assert load_problem(samples_dir / "cover.tl") == cover_problem


def test_running_sample_non_eager_rule(samples_dir, straddle_problem):
    assert load_problem(samples_dir / "straddle.tl") == straddle_problem


def test_micro_sample(samples_dir):
    assert load_problem(samples_dir / "micro.tl") == micro_one_shot()


@pytest.mark.parametrize("name", sorted(MICRO_PROBLEMS))
def test_printed_micro_problems_parse_back(name):
    problem = MICRO_PROBLEMS[name]()
    assert parse_problem(format_problem(problem)) == problem


def test_printed_unsat_problem_parses_back():
    problem = unsat_problem()
    assert parse_problem(format_problem(problem, header="no plan\nat any horizon")) == problem


def test_printed_compiled_problem_parses_back():
    problem = emergency_department_problem().problem
    text = format_problem(problem)
    assert 'rule "b1:Ff.2": a0[x_b1=top] => exists a1[x_b1_flow=top_after].' in text
    assert "    trans top -> {};" in text
    assert parse_problem(text) == problem


def test_equalities_print_as_one_atom():
    atoms = [Atom(start("a"), start("b")), Atom(start("b"), start("a")), Atom(end("a"), end("b"), strict=True)]
    rule = make_rule(("a", "x", "v"), [("b", "y", "w")], atoms, "r")
    assert format_rule(rule) == "rule r: a[x=v] => exists b[y=w]. start(a) = start(b) & end(a) < end(b);"


def test_labels_are_quoted_when_needed():
    rule = make_rule(None, [("t", "x", "v")], [], "start")
    assert format_rule(rule) == 'rule "start": true => exists t[x=v]. true;'
    assert format_rule(make_rule(None, [("t", "x", "v")], [])) == "rule: true => exists t[x=v]. true;"


def test_transition_lines_merge():
    problem = parse_problem("var x { values a, b; trans a -> {b, b}; trans a -> {a}; }")
    x = problem.variable("x")
    assert x.successors("a") == {"a", "b"}
    assert x.successors("b") == frozenset()


def test_disjunctions_and_triggerless_rules():
    problem = parse_problem(
        """
        var x { values a; }
        var y { values c; }
        rule d: a0[x=a] => exists b[y=c]. start(a0) <= start(b) & end(a0) <= end(b)
                         | exists c[y=c]. end(c) <= start(a0) & start(a0) < end(a0);
        rule: true => true;
        """
    )
    d, anonymous = problem.rules
    assert len(d.disjuncts) == 2
    assert anonymous.trigger is None and anonymous.label == ""
    assert anonymous.disjuncts[0].quantifiers == ()


def test_unbounded_interval_is_a_plain_atom():
    problem = parse_problem(
        "var x { values a; }\n"
        "rule r: a0[x=a] => exists a1[x=a]. start(a0) <=[0, inf] start(a1) & end(a0) <= end(a1);\n"
    )
    assert Atom(start("a0"), start("a1")) in problem.rules[0].disjuncts[0].clause
    assert validate_problem(problem) == []


def test_bounded_atom_is_reported():
    problem = parse_problem(
        "var x { values a; }\n"
        "rule r: a0[x=a] => exists a1[x=a]. start(a0) <=[2, 5] start(a1) & end(a0) <= end(a1);\n"
    )
    assert [v.code for v in validate_problem(problem)] == ["out of fragment"]


def test_integer_term_is_rejected():
    with pytest.raises(ProblemSyntaxError) as info:
        parse_problem("var x { values a; }\nrule r: a0[x=a] => exists a1[x=a]. start(a0) <= 3;\n")
    assert info.value.line == 2
    assert "qualitative" in str(info.value)


def test_syntax_error_position():
    with pytest.raises(ProblemSyntaxError) as info:
        parse_problem("var x { values a; }\nrule r: a0[x=a] => exists a1[x=a]. start(a0) <= ;\n")
    assert (info.value.line, info.value.column) == (2, 49)


def test_unexpected_character():
    with pytest.raises(ProblemSyntaxError) as info:
        parse_problem("var x { values a; } @")
    assert (info.value.line, info.value.column) == (1, 21)
    assert "'@'" in str(info.value)


def test_unexpected_end_of_input():
    with pytest.raises(ProblemSyntaxError) as info:
        parse_problem("var x { values a;")
    assert "end of input" in str(info.value)
    assert info.value.line == 1
