"""Tests for the Allen-relation encodings and their eagerness table."""

from pathlib import Path

import pytest

from planner.allen import (
    CSV_HEADER,
    INVERSES,
    RELATIONS,
    allen_encoding,
    allen_shape,
    allen_table,
    format_table_csv,
    format_table_text,
    relation_atoms,
    table_rows,
)
from planner.eagerness import is_eager_rule
from planner.models import Atom, ExistentialStatement, SynchronizationRule, Term, TokenPattern, end, equals, start

from .conftest import make_rule

DATA = Path(__file__).resolve().parent.parent / "planner" / "data"

EAGER_ROWS = {1, 2, 3, 4, 5, 6, 8, 10, 11, 17, 19, 20}


def test_text_table_matches_golden_file():
    assert format_table_text(allen_table()) == (DATA / "allen_table.txt").read_text(encoding="utf-8")


def test_csv_table_matches_golden_file():
    text = format_table_csv(allen_table())
    assert text == (DATA / "allen_table.csv").read_text(encoding="utf-8")
    assert text.splitlines()[0].split(",") == CSV_HEADER


def test_overall_verdict_matches_rule_eagerness():
    for row in allen_table():
        rule = allen_encoding(row.relation, trigger_role=row.trigger)
        assert is_eager_rule(rule).eager == (not row.overall), row.number
        assert (row.number in EAGER_ROWS) == (not row.overall)


def test_trigger_cells_are_blank():
    rows = {(r.relation, r.trigger): r for r in allen_table()}
    assert rows[("before", "a")].a.left is None
    assert rows[("before", "b")].b.ambiguous is None
    assert rows[("equal", "none")].a.ambiguous is True


def test_table_has_every_relation_and_role():
    assert len(table_rows()) == 21
    assert {relation for relation, _ in table_rows()} == set(RELATIONS)


@pytest.mark.parametrize("inverse, base", sorted(INVERSES.items()))
def test_inverse_swaps_token_roles(inverse, base):
    swapped = {Atom(_swap(a.lhs), _swap(a.rhs), a.strict) for a in relation_atoms(base)}
    assert set(relation_atoms(inverse)) == swapped


def _swap(term: Term) -> Term:
    return Term(term.endpoint, {"a": "b", "b": "a"}[term.token])


def test_reflexive_encoding_has_no_strict_atoms_between_tokens():
    for relation in RELATIONS:
        atoms = relation_atoms(relation, reflexive=True)
        assert not any(a.strict for a in atoms), relation


def test_trigger_gets_positive_duration_when_unmentioned():
    rule = allen_encoding("before", trigger_role="b")
    assert Atom(start("b"), end("b"), strict=True) in rule.disjuncts[0].clause
    assert rule.label == "before/b"


def test_unknown_role_or_relation():
    with pytest.raises(ValueError):
        allen_encoding("before", trigger_role="c")
    with pytest.raises(ValueError):
        relation_atoms("touches")


@pytest.mark.parametrize("number, relation_role", list(enumerate(table_rows(), start=1)))
def test_shape_recognises_every_strict_row(number, relation_role):
    relation, role = relation_role
    shape = allen_shape(allen_encoding(relation, trigger_role=role))
    assert shape is not None
    assert (shape.row, shape.reflexive) == (number, False)


def test_shape_ignores_token_names():
    rule = make_rule(
        ("t0", "x", "on"),
        [("t1", "y", "on")],
        [Atom(end("t0"), start("t1"), strict=True)],
    )
    assert allen_shape(rule).row == 1


def test_equal_keeps_its_trigger_side():
    shape = allen_shape(allen_encoding("equal", trigger_role="b"))
    assert (shape.row, shape.trigger) == (20, "b")
    renamed = make_rule(
        ("t0", "x", "on"),
        [("t1", "y", "on")],
        [*equals(start("t0"), start("t1")), *equals(end("t0"), end("t1"))],
    )
    assert allen_shape(renamed).row == 19


def test_shape_of_reflexive_rule():
    shape = allen_shape(allen_encoding("before", reflexive=True))
    assert shape.row == 1 and shape.reflexive


def test_shape_rejects_other_rules():
    three = make_rule(("a", "x", "v"), [("b", "y", "w"), ("c", "z", "u")], [])
    assert allen_shape(three) is None
    two_ways = SynchronizationRule(
        TokenPattern("a", "x", "v"),
        (
            ExistentialStatement((TokenPattern("b", "y", "w"),), frozenset()),
            ExistentialStatement((TokenPattern("c", "z", "u"),), frozenset()),
        ),
    )
    assert allen_shape(two_ways) is None
