"""Tests for SESE trees and their compilation into planning problems."""

import itertools
import json
import random

import pytest

from planner.allen import allen_shape
from planner.bpmn import BlockKind, SeseBlock, compile_tree, dump_tree, load_tree, tree_from_dict
from planner.bpmn.catalog import RULE_CATALOG, shape_atoms
from planner.bpmn.compiler import GOAL_LABEL
from planner.bpmn.fixtures import (
    drop_last_monitoring_iteration,
    drop_root_after_phase,
    emergency_department_problem,
    enrich_plan,
    enrich_with_patient_condition,
    fixture_plans,
)
from planner.eagerness import classify_problem
from planner.errors import MalformedTreeError
from planner.oracle import validate_plan, validate_problem, verify_solution


@pytest.fixture(scope="module")
def ed():
    return emergency_department_problem()


def test_emergency_department_size(ed):
    assert len(ed.problem.variables) == 19
    assert len(ed.problem.rules) == 53
    assert ed.var_index["b3"] == ("x_b3", "x_b3_dec")
    assert ed.rule(GOAL_LABEL).trigger is None


def test_emergency_department_is_eager(ed):
    assert validate_problem(ed.problem) == []
    assert all(r.eager for r in classify_problem(ed.problem))


def test_catalog_shapes_are_eager_allen_rows(ed):
    rows = {"equal": 19, "prefix": 11, "suffix": 8, "prefix_of": 10}
    templates = {t.code: t for kind in RULE_CATALOG.values() for t in kind}
    for rule in ed.problem.rules:
        shape = allen_shape(rule)
        if rule.label == GOAL_LABEL:
            assert shape is None
            continue
        code = rule.label.split(":", 1)[1]
        assert shape.row == rows[templates[code].shape], rule.label


def test_unknown_shape():
    with pytest.raises(ValueError):
        shape_atoms("around")


@pytest.mark.parametrize("name", ["critical", "non_critical"])
def test_fixture_plans_are_solutions(ed, name):
    plan = fixture_plans()[name]
    assert plan.horizon == 11
    assert validate_plan(ed.problem, plan) == []
    report = verify_solution(ed.problem, plan)
    assert report.is_solution, report.failing_rules


def test_root_without_after_phase_fails(ed):
    plan = drop_root_after_phase(fixture_plans()["critical"])
    assert "b1:Ff.2" in verify_solution(ed.problem, plan).failing_rules


def test_missing_monitoring_iteration_fails(ed):
    plan = drop_last_monitoring_iteration(fixture_plans()["non_critical"])
    assert "b9:Lf.2" in verify_solution(ed.problem, plan).failing_rules


def test_patient_condition_overlay(ed):
    enriched = enrich_with_patient_condition(ed)
    assert len(enriched.problem.variables) == 20
    assert len(enriched.problem.rules) == 55
    assert all(r.eager for r in classify_problem(enriched.problem))
    for plan in fixture_plans().values():
        assert verify_solution(enriched.problem, enrich_plan(plan)).is_solution


def test_tree_round_trip(samples_dir):
    tree = load_tree(samples_dir / "emergency_department.json")
    assert tree_from_dict(json.loads(dump_tree(tree))) == tree
    assert [b.id for b in tree.walk()][:3] == ["b1", "b2", "b15"]


@pytest.mark.parametrize(
    "data",
    [
        {"id": "b1", "type": "FLOW", "before": {"id": "b2", "type": "TASK"}},
        {"id": "b1", "type": "TASK", "body": {"id": "b2", "type": "TASK"}},
        {"id": "b1", "type": "GATEWAY"},
        {"id": "", "type": "TASK"},
        {"id": "b1", "type": "TASK", "colour": "red"},
        {
            "id": "b1",
            "type": "PARALLEL",
            "left": {"id": "b2", "type": "TASK"},
            "right": {"id": "b2", "type": "TASK"},
        },
    ],
    ids=["missing-child", "extra-child", "unknown-kind", "empty-id", "unknown-field", "duplicate-id"],
)
def test_malformed_trees(data):
    with pytest.raises(MalformedTreeError):
        tree_from_dict(data)


def test_tree_file_must_be_json(tmp_path):
    path = tmp_path / "tree.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(MalformedTreeError):
        load_tree(path)


# ============================================================================
# Random trees
# ============================================================================


def random_tree(rng: random.Random, budget: int, ids) -> SeseBlock:
    """A random tree with at most `budget` blocks."""
    block_id = f"b{next(ids)}"
    if budget < 3:
        kinds = [BlockKind.TASK, BlockKind.LOOP] if budget == 2 else [BlockKind.TASK]
    else:
        kinds = list(BlockKind)
    kind = rng.choice(kinds)
    if kind is BlockKind.TASK:
        return SeseBlock.task(block_id)
    if kind is BlockKind.LOOP:
        return SeseBlock.loop(block_id, random_tree(rng, budget - 1, ids))
    share = rng.randint(1, budget - 2)
    first = random_tree(rng, share, ids)
    second = random_tree(rng, budget - 1 - share, ids)
    if kind is BlockKind.FLOW:
        return SeseBlock.flow(block_id, first, second)
    if kind is BlockKind.PARALLEL:
        return SeseBlock.parallel(block_id, first, second)
    return SeseBlock.xor(block_id, first, second)


def test_random_trees_compile_to_eager_problems():
    rng = random.Random(11)
    for _ in range(25):
        tree = random_tree(rng, rng.randint(1, 10), itertools.count(1))
        blocks = list(tree.walk())
        assert len(blocks) <= 10
        compiled = compile_tree(tree)
        problem = compiled.problem
        extra = sum(1 for b in blocks if b.type in (BlockKind.FLOW, BlockKind.XOR))
        assert len(problem.variables) == len(blocks) + extra
        assert len(problem.rules) == 1 + sum(len(RULE_CATALOG[b.type]) for b in blocks)
        assert validate_problem(problem) == []
        assert all(r.eager for r in classify_problem(problem))
