"""End-to-end tests of the planner command line."""

import json
from pathlib import Path

import pytest

from planner.cli import main
from planner.commands import EXIT_BUDGET, EXIT_FAILURE, EXIT_INPUT, EXIT_OK, build_registry
from planner.dsl import format_problem
from planner.storage import save_plan

from .conftest import unsat_problem

DATA = Path(__file__).resolve().parent.parent / "planner" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_registry_names():
    assert build_registry().list_commands() == ["check", "solve", "verify", "allen-table", "lowerbound", "bpmn"]


def test_command_is_required(capsys):
    with pytest.raises(SystemExit):
        main([])


# ============================================================================
# check
# ============================================================================


def test_check_eager_problem(capsys, samples_dir):
    code, out, err = run(capsys, "check", samples_dir / "cover.tl")
    assert code == EXIT_OK
    assert json.loads(out)["eager"] is True
    assert "✓ all rules eager (1 rules, 3 variables)" in err


def test_check_non_eager_problem(capsys, samples_dir):
    code, out, err = run(capsys, "check", samples_dir / "straddle.tl")
    assert code == EXIT_FAILURE
    assert json.loads(out)["eager"] is False
    assert "token a3 is ambiguous" in err


def test_check_syntax_error(capsys, tmp_path):
    path = tmp_path / "broken.tl"
    path.write_text("var x { values a; }\nrule r: a0[x=a] =>\n", encoding="utf-8")
    code, out, err = run(capsys, "check", path)
    assert code == EXIT_INPUT
    assert json.loads(out)["error_type"] == "ProblemSyntaxError"


def test_check_invalid_problem(capsys, tmp_path):
    path = tmp_path / "ghost.tl"
    path.write_text("var x { values a; }\nrule r: a0[x=a] => exists a1[y=a]. start(a0) <= end(a1) & start(a1) < end(a0);\n",
                    encoding="utf-8")
    code, out, _ = run(capsys, "check", path)
    assert code == EXIT_INPUT
    assert "unknown variable" in [v["code"] for v in json.loads(out)["violations"]]


def test_check_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "check", tmp_path / "nowhere.tl")
    assert code == EXIT_INPUT


def test_quiet_suppresses_report(capsys, samples_dir):
    code, _, err = run(capsys, "--quiet", "check", samples_dir / "cover.tl")
    assert code == EXIT_OK
    assert "✓" not in err


# ============================================================================
# solve and verify
# ============================================================================


def test_solve_emits_a_verifiable_plan(capsys, samples_dir, tmp_path):
    plan_file = tmp_path / "plan.json"
    dot_file = tmp_path / "product.dot"
    code, out, err = run(capsys, "solve", samples_dir / "micro.tl", "--emit-plan", plan_file, "--dot", dot_file)
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["status"] == "solution"
    assert data["plan"]["horizon"] == 1
    assert "✓ solution with horizon 1" in err
    assert dot_file.read_text(encoding="utf-8").startswith('digraph "product"')

    code, out, _ = run(capsys, "verify", samples_dir / "micro.tl", plan_file)
    assert code == EXIT_OK
    assert json.loads(out)["is_solution"] is True


def test_solve_refuses_non_eager_problem(capsys, samples_dir):
    code, out, err = run(capsys, "solve", samples_dir / "straddle.tl")
    assert code == EXIT_FAILURE
    assert json.loads(out)["status"] == "refused"
    assert "straddle: not eager" in err


def test_solve_budget(capsys, tmp_path):
    path = tmp_path / "unsat.tl"
    path.write_text(format_problem(unsat_problem()), encoding="utf-8")
    code, out, err = run(capsys, "solve", path, "--max-states", 1)
    assert code == EXIT_BUDGET
    assert json.loads(out)["stats"]["limit_hit"] == "max_states"
    assert "⚠ budget exhausted" in err

    code, out, err = run(capsys, "solve", path)
    assert code == EXIT_FAILURE
    assert json.loads(out)["status"] == "empty"
    assert "no solution plan exists" in err


def test_verify_running_plan(capsys, samples_dir):
    code, out, err = run(capsys, "verify", samples_dir / "cover.tl", samples_dir / "running_plan.json", "--show-plan")
    assert code == EXIT_OK
    assert json.loads(out)["failing_rules"] == []
    assert "x0 |" in err


def test_verify_failing_plan(capsys, samples_dir, tmp_path, running_plan):
    path = save_plan(running_plan.replace("x1", [("idle", 2), ("v1", 1), ("v2", 3)]), tmp_path / "bad.json")
    code, out, err = run(capsys, "verify", samples_dir / "cover.tl", path)
    assert code == EXIT_FAILURE
    assert json.loads(out)["failing_rules"] == ["cover"]
    assert "✗ cover: trigger token #1 [1, 4) is not covered" in err


def test_verify_plan_outside_problem(capsys, samples_dir, tmp_path, running_plan):
    path = save_plan(running_plan.replace("x0", [("busy", 6)]), tmp_path / "foreign.json")
    code, out, _ = run(capsys, "verify", samples_dir / "cover.tl", path)
    assert code == EXIT_INPUT
    assert json.loads(out)["error_type"] == "InvalidPlanError"


def test_verify_malformed_plan_file(capsys, samples_dir, tmp_path):
    path = tmp_path / "short.json"
    path.write_text('{"horizon": 3, "timelines": {"x0": [{"value": "idle", "duration": 1}]}}', encoding="utf-8")
    code, out, _ = run(capsys, "verify", samples_dir / "cover.tl", path)
    assert code == EXIT_INPUT
    assert json.loads(out)["error_type"] == "PlanFileError"


# ============================================================================
# Experiments and compilation
# ============================================================================


def test_allen_table_text(capsys):
    code, out, err = run(capsys, "allen-table")
    assert code == EXIT_OK
    assert out == (DATA / "allen_table.txt").read_text(encoding="utf-8")
    assert "✓ 21 rows, 12 eager" in err


def test_allen_table_csv(capsys):
    code, out, _ = run(capsys, "allen-table", "--format", "csv")
    assert code == EXIT_OK
    assert out == (DATA / "allen_table.csv").read_text(encoding="utf-8")


def test_lowerbound_small(capsys, tmp_path):
    csv_file = tmp_path / "lb.csv"
    code, out, err = run(capsys, "lowerbound", "--n", 2, 3, "--csv", csv_file, "--bridge-samples", 10, "--seed", 3)
    assert code == EXIT_OK
    results = json.loads(out)["results"]
    assert [(r["n"], r["classes"], r["strict"]) for r in results] == [(2, 4, False), (3, 8, False)]
    assert len(csv_file.read_text(encoding="utf-8").splitlines()) == 3
    assert "⚠ n=2: classes=4 <= 4" in err


def test_lowerbound_rejects_large_n(capsys):
    code, _, _ = run(capsys, "lowerbound", "--n", 9)
    assert code == EXIT_INPUT


@pytest.mark.slow
def test_lowerbound_default(capsys):
    code, out, err = run(capsys, "lowerbound")
    assert code == EXIT_OK
    assert json.loads(out)["results"][0]["classes"] == 64
    assert "✓ n=4: classes=64 > 16 (2016 pairs verified)" in err


def test_bpmn_compiles_a_checkable_problem(capsys, samples_dir, tmp_path):
    code, out, err = run(capsys, "bpmn", samples_dir / "emergency_department.json")
    assert code == EXIT_OK
    assert out.startswith("# compiled from SESE tree b1 (emergency_department.json)\n")
    assert "✓ compiled 19 variables, 53 rules" in err

    target = tmp_path / "ed.tl"
    code, out, _ = run(capsys, "bpmn", samples_dir / "emergency_department.json", "-o", target, "--enrich")
    assert code == EXIT_OK
    data = json.loads(out)
    assert (data["variables"], data["rules"]) == (20, 55)
    assert data["blocks"]["b1"] == ["x_b1", "x_b1_flow"]

    code, out, _ = run(capsys, "check", target)
    assert code == EXIT_OK
    assert json.loads(out)["eager"] is True


def test_bpmn_enrich_needs_case_study_blocks(capsys, samples_dir):
    code, _, err = run(capsys, "bpmn", samples_dir / "flow_tasks.json", "--enrich")
    assert code == EXIT_INPUT
    assert "b4, b16" in err


def test_bpmn_malformed_tree(capsys, tmp_path):
    path = tmp_path / "tree.json"
    path.write_text('{"id": "b1", "type": "LOOP"}', encoding="utf-8")
    code, out, _ = run(capsys, "bpmn", path)
    assert code == EXIT_INPUT
    assert json.loads(out)["error_type"] == "MalformedTreeError"
