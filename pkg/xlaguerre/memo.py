"""Memo tables for symbolic constructions.

Thread-safe LRU keyed by hashable construction arguments (family, m, n, parameter...).
Lookups and inserts hold the lock; builders run outside it, so two threads may build
the same value once each. Construction is pure, so whichever insert lands first wins
and both callers see equal values.
"""

from __future__ import annotations

import logging
import threading
from collections import OrderedDict
from collections.abc import Callable, Hashable
from dataclasses import dataclass
from typing import Generic, TypeVar

from .config import settings

logger = logging.getLogger("xlaguerre.memo")

V = TypeVar("V")


@dataclass
class MemoStats:
    name: str
    entries: int
    hits: int
    misses: int
    max_size: int


class MemoTable(Generic[V]):
    """Bounded LRU of immutable values."""

    def __init__(self, name: str, max_size: int | None = None):
        self.name = name
        self._max_size = max_size or settings.memo_size
        self._entries: OrderedDict[Hashable, V] = OrderedDict()
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0

    def get(self, key: Hashable) -> V | None:
        with self._lock:
            value = self._entries.get(key)
            if value is None:
                self._misses += 1
                return None
            self._hits += 1
            self._entries.move_to_end(key)
            return value

    def put(self, key: Hashable, value: V) -> V:
        """Insert unless another thread got there first; return the stored value."""
        with self._lock:
            existing = self._entries.get(key)
            if existing is not None:
                return existing
            self._entries[key] = value
            while len(self._entries) > self._max_size:
                self._entries.popitem(last=False)
            return value

    def get_or_build(self, key: Hashable, builder: Callable[[], V]) -> V:
        value = self.get(key)
        if value is not None:
            return value
        return self.put(key, builder())

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self._hits = 0
            self._misses = 0
        logger.debug("memo_cleared: %s", self.name)

    @property
    def size(self) -> int:
        with self._lock:
            return len(self._entries)

    def stats(self) -> MemoStats:
        with self._lock:
            return MemoStats(
                name=self.name,
                entries=len(self._entries),
                hits=self._hits,
                misses=self._misses,
                max_size=self._max_size,
            )
