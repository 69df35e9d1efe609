"""
Run metrics for searches and experiments.

This module provides:
- Counters and peak gauges keyed by name
- Wall-clock timing from construction
- A plain-dict snapshot for JSON reports
"""

import time
from typing import Any, Dict


class RunMetrics:
    """Collector for one solver or experiment run."""

    def __init__(self):
        self.counters: Dict[str, int] = {}
        self.peaks: Dict[str, int] = {}
        self._started = time.perf_counter()

    def incr(self, name: str, by: int = 1) -> None:
        self.counters[name] = self.counters.get(name, 0) + by

    def peak(self, name: str, value: int) -> None:
        if value > self.peaks.get(name, 0):
            self.peaks[name] = value

    def elapsed(self) -> float:
        """Seconds since construction."""
        return time.perf_counter() - self._started

    def snapshot(self) -> Dict[str, Any]:
        """
        Get every metric as a flat dict.

        Returns:
            {counter and peak names: int, "wall_time": float seconds}
        """
        data: Dict[str, Any] = dict(self.counters)
        data.update(self.peaks)
        data["wall_time"] = round(self.elapsed(), 6)
        return data
