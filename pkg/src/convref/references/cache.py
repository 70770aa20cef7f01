"""Bounded LRU cache for reference bundles with per-entry TTL.

Thread-safe: prefetch workers insert while the hub resolves concurrently.
Stale entries are never returned; a hit refreshes recency.
"""

from __future__ import annotations

import threading
import time
from collections import OrderedDict

from .kinds import ReferenceBundle, ReferenceKind

DEFAULT_CAPACITY = 1024

CacheKey = tuple[str, ReferenceKind]


class PrefetchCache:
    def __init__(self, capacity: int = DEFAULT_CAPACITY, clock=time.monotonic):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self._clock = clock
        self._entries: OrderedDict[CacheKey, ReferenceBundle] = OrderedDict()
        self._lock = threading.Lock()

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def get(self, normalized: str, kind: ReferenceKind) -> ReferenceBundle | None:
        key = (normalized, kind)
        with self._lock:
            bundle = self._entries.get(key)
            if bundle is None:
                return None
            if bundle.is_stale(self._clock()):
                del self._entries[key]
                return None
            self._entries.move_to_end(key)
            return bundle

    def put(self, normalized: str, kind: ReferenceKind, bundle: ReferenceBundle) -> None:
        key = (normalized, kind)
        with self._lock:
            self._entries[key] = bundle
            self._entries.move_to_end(key)
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)

    def get_or_put(self, normalized: str, kind: ReferenceKind,
                   bundle: ReferenceBundle) -> ReferenceBundle:
        """Atomic insert-or-get: an existing fresh entry wins over `bundle`."""
        key = (normalized, kind)
        with self._lock:
            existing = self._entries.get(key)
            if existing is not None and not existing.is_stale(self._clock()):
                self._entries.move_to_end(key)
                return existing
            self._entries[key] = bundle
            self._entries.move_to_end(key)
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)
            return bundle

    def contains_fresh(self, normalized: str, kind: ReferenceKind) -> bool:
        return self.get(normalized, kind) is not None
