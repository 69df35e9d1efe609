"""Tests for configuration, transition caching, budgets and run metrics."""

import pytest

from planner.budget import SearchBudget
from planner.cache import TransitionCache
from planner.config import DEFAULT_MAX_LEN, _int_env
from planner.metrics import RunMetrics


def test_int_env_reads_positive_integers(monkeypatch):
    monkeypatch.setenv("PLANNER_TEST_LIMIT", "12")
    assert _int_env("PLANNER_TEST_LIMIT", 5) == 12


def test_int_env_defaults_when_unset(monkeypatch):
    monkeypatch.delenv("PLANNER_TEST_LIMIT", raising=False)
    assert _int_env("PLANNER_TEST_LIMIT", 5) == 5
    monkeypatch.setenv("PLANNER_TEST_LIMIT", "  ")
    assert _int_env("PLANNER_TEST_LIMIT", 5) == 5


@pytest.mark.parametrize("raw", ["many", "-3", "0"])
def test_int_env_warns_on_junk(monkeypatch, raw):
    monkeypatch.setenv("PLANNER_TEST_LIMIT", raw)
    with pytest.warns(UserWarning, match="PLANNER_TEST_LIMIT"):
        assert _int_env("PLANNER_TEST_LIMIT", 5) == 5


def test_cache_evicts_least_recently_used():
    cache = TransitionCache(max_size=2)
    cache.set("a", 1)
    cache.set("b", 2)
    assert cache.get("a") == 1
    cache.set("c", 3)
    assert "b" not in cache
    assert cache.get("b") is None
    assert cache.stats() == {"size": 2, "max_size": 2, "hits": 1, "misses": 1, "hit_rate": 0.5}


def test_cache_can_be_disabled():
    cache = TransitionCache(max_size=0)
    cache.set("a", 1)
    assert len(cache) == 0


def test_budget_counts_states():
    budget = SearchBudget.from_limits(max_states=2)
    assert budget.max_len == DEFAULT_MAX_LEN
    assert budget.charge_state() and budget.charge_state()
    assert not budget.charge_state()
    assert budget.limit_hit == "max_states"
    budget.trip_length()
    assert budget.to_dict()["limit_hit"] == "max_states"


def test_budget_depth():
    budget = SearchBudget.from_limits(max_len=2)
    assert budget.allows_depth(1)
    assert not budget.allows_depth(2)
    assert not budget.tripped
    budget.trip_length()
    assert budget.limit_hit == "max_len"


def test_metrics_snapshot():
    metrics = RunMetrics()
    metrics.incr("transitions")
    metrics.incr("transitions", by=4)
    metrics.peak("frontier_peak", 3)
    metrics.peak("frontier_peak", 2)
    snapshot = metrics.snapshot()
    assert snapshot["transitions"] == 5
    assert snapshot["frontier_peak"] == 3
    assert snapshot["wall_time"] >= 0
