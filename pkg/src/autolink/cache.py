"""LRU cache for annotation results with first-word expiry.

A cached document stays valid only while no concept sharing a first
word with it is added or removed. A new phrase can only change match
outcomes where its first word occurs, so expiring on first-word
intersection is sound without re-scanning any document; anything less
aggressive could serve stale links.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Any

from .index import invalidation_keys
from .store import Concept

DEFAULT_CAPACITY = 1024


@dataclass
class CacheEntry:
    doc_id: str
    content_hash: str
    result: Any
    first_words: frozenset[str]


class LinkCache:
    """Thread-safe LRU keyed by document id, guarded by content hash."""

    def __init__(self, capacity: int = DEFAULT_CAPACITY) -> None:
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self._entries: OrderedDict[str, CacheEntry] = OrderedDict()
        self._lock = threading.RLock()
        self.hits = 0
        self.misses = 0
        self.expired = 0

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, doc_id: str, content_hash: str) -> Any | None:
        with self._lock:
            entry = self._entries.get(doc_id)
            if entry is None or entry.content_hash != content_hash:
                self.misses += 1
                return None
            self._entries.move_to_end(doc_id)
            self.hits += 1
            return entry.result

    def put(self, doc_id: str, content_hash: str, result: Any,
            first_words: frozenset[str]) -> None:
        with self._lock:
            self._entries[doc_id] = CacheEntry(
                doc_id, content_hash, result, frozenset(first_words)
            )
            self._entries.move_to_end(doc_id)
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)

    def invalidate_for_concept(
        self, concept: Concept, stopwords: frozenset[str] | None = None
    ) -> int:
        """Expire every entry whose words intersect the concept's
        invalidation keys; returns how many were dropped."""
        keys = invalidation_keys(concept, stopwords)
        if not keys:
            return 0
        with self._lock:
            doomed = [
                doc_id
                for doc_id, entry in self._entries.items()
                if entry.first_words & keys
            ]
            for doc_id in doomed:
                del self._entries[doc_id]
            self.expired += len(doomed)
            return len(doomed)

    def stats(self) -> dict[str, int]:
        with self._lock:
            return {
                "entries": len(self._entries),
                "hits": self.hits,
                "misses": self.misses,
                "expired": self.expired,
            }
