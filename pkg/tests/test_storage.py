"""Tests for plan files."""

import json

import pytest

from planner.errors import PlanFileError
from planner.storage import dump_plan, load_plan, plan_from_dict, save_plan


def test_load_sample(samples_dir, running_plan):
    assert load_plan(samples_dir / "running_plan.json") == running_plan


def test_save_is_stable(tmp_path, running_plan):
    first = save_plan(running_plan, tmp_path / "out" / "plan.json")
    again = save_plan(load_plan(first), tmp_path / "again.json")
    assert first.read_bytes() == again.read_bytes()
    assert first.read_text(encoding="utf-8").endswith("}\n")


def test_dump_sorts_keys(running_plan):
    data = json.loads(dump_plan(running_plan))
    assert list(data) == ["horizon", "timelines"]
    assert data["timelines"]["x0"][1] == {"duration": 3, "value": "v0"}


def test_timelines_sorted_by_variable():
    plan = plan_from_dict({"horizon": 1, "timelines": {"y": [{"value": "a", "duration": 1}],
                                                        "x": [{"value": "b", "duration": 1}]}})
    assert plan.variables == ("x", "y")


@pytest.mark.parametrize(
    "data, where",
    [
        ({"horizon": 2, "timelines": {"x": [{"value": "a", "duration": 1}]}}, "spans 1"),
        ({"horizon": 1, "timelines": {"x": [{"value": "a", "duration": 0}]}}, "duration"),
        ({"horizon": 1, "timelines": {"x": [{"value": "", "duration": 1}]}}, "value"),
        ({"horizon": 1, "timelines": {}, "extra": True}, "extra"),
        ({"timelines": {}}, "horizon"),
    ],
    ids=["horizon-mismatch", "zero-duration", "empty-value", "unknown-key", "no-horizon"],
)
def test_malformed_plans(data, where):
    with pytest.raises(PlanFileError) as info:
        plan_from_dict(data)
    assert where in str(info.value)


def test_plan_file_must_be_json(tmp_path):
    path = tmp_path / "plan.json"
    path.write_text("horizon: 3", encoding="utf-8")
    with pytest.raises(PlanFileError) as info:
        load_plan(path)
    assert "not JSON" in str(info.value)
