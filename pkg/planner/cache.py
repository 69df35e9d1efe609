"""
Transition caching for the planner automata.

Automaton states are hashable immutable values, so the successor of a
(state, symbol) pair can be memoised. Each automaton owns one cache.

Features:
- LRU eviction once max_size entries are held
- Hit/miss counters surfaced in solver statistics
"""

from collections import OrderedDict
from typing import Any, Dict, Hashable, Optional

from .config import TRANSITION_CACHE_SIZE

_MISSING = object()


class TransitionCache:
    """In-memory LRU cache keyed by (state, symbol)."""

    def __init__(self, max_size: int = TRANSITION_CACHE_SIZE):
        """
        Initialize the cache.

        Args:
            max_size: Maximum number of entries; 0 disables caching
        """
        self.max_size = max_size
        self.hits = 0
        self.misses = 0
        self._cache: "OrderedDict[Hashable, Any]" = OrderedDict()

    def get(self, key: Hashable, default: Optional[Any] = None) -> Any:
        """
        Look up a cached successor.

        Args:
            key: (state, symbol) pair
            default: Returned when the key is absent

        Returns:
            Cached successor or default
        """
        value = self._cache.get(key, _MISSING)
        if value is _MISSING:
            self.misses += 1
            return default
        self._cache.move_to_end(key)
        self.hits += 1
        return value

    def set(self, key: Hashable, value: Any) -> None:
        if self.max_size <= 0:
            return
        self._cache[key] = value
        self._cache.move_to_end(key)
        while len(self._cache) > self.max_size:
            self._cache.popitem(last=False)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._cache

    def __len__(self) -> int:
        return len(self._cache)

    def clear(self) -> None:
        """Clear all cache entries."""
        self._cache.clear()
        self.hits = 0
        self.misses = 0

    def stats(self) -> Dict[str, Any]:
        """Get cache statistics."""
        lookups = self.hits + self.misses
        return {
            "size": len(self._cache),
            "max_size": self.max_size,
            "hits": self.hits,
            "misses": self.misses,
            "hit_rate": round(self.hits / lookups, 3) if lookups else 0.0,
        }
