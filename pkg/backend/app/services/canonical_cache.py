"""
Bounded in-memory cache of canonicalization results.
"""
from collections import OrderedDict
from typing import Any, Hashable, Optional


class CanonicalCache:
    """In-memory LRU cache with a fixed entry budget."""

    def __init__(self, max_entries: int = 100000):
        self.max_entries = max_entries
        self._cache: OrderedDict[Hashable, Any] = OrderedDict()
        self._hits = 0
        self._misses = 0
        self._evictions = 0

    def get(self, key: Hashable) -> Optional[Any]:
        """
        Get a cached result.

        Args:
            key: Cache key, typically CanonicalEngine.cache_key(f)

        Returns:
            Cached value or None if not found
        """
        value = self._cache.get(key)
        if value is None:
            self._misses += 1
        else:
            self._hits += 1
            self._cache.move_to_end(key)
        return value

    def set(self, key: Hashable, value: Any) -> None:
        """
        Store a result, evicting the least recently used entry when the budget is reached.

        Existing keys keep their first value; an orbit seeded by the
        exhaustive oracle must not be overwritten by a later seeding.
        """
        if self.max_entries <= 0:
            return
        if key in self._cache:
            self._cache.move_to_end(key)
            return
        if len(self._cache) >= self.max_entries:
            self._cache.popitem(last=False)
            self._evictions += 1
        self._cache[key] = value

    def invalidate(self, key: Hashable) -> None:
        self._cache.pop(key, None)

    def clear(self) -> None:
        """Clear all cache entries and counters."""
        self._cache.clear()
        self._hits = self._misses = self._evictions = 0

    def __len__(self) -> int:
        return len(self._cache)

    def get_stats(self) -> dict:
        """Get cache statistics."""
        return {
            "total_entries": len(self._cache),
            "max_entries": self.max_entries,
            "hits": self._hits,
            "misses": self._misses,
            "evictions": self._evictions,
        }
