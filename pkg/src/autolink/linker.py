"""End-to-end annotation pipeline with caching.

A Linker owns one index and one cache, both subscribed to the store:
every add/remove updates the index in place and expires any cached
document that shares a first word with the changed concept, before the
mutation returns. Annotation results are cached per document under a
hash of everything that influences the output (body, source filter,
policy), so a hit can never smuggle in the wrong variant.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace

from .annotate import Annotation, embed_links, standoff
from .cache import DEFAULT_CAPACITY, LinkCache
from .disambiguate import DEFAULT_SOURCE_PRIORITY, Resolution, resolve
from .discovery import Mention, discover_mentions, document_words
from .index import build_index
from .store import ChangeEvent, ConceptStore


@dataclass(frozen=True)
class LinkResult:
    """Everything one pipeline run produces: the embedded document and
    the full stand-off list (always all occurrences)."""

    html: str
    annotations: tuple[Annotation, ...]
    resolutions: tuple[Resolution, ...]


def content_hash(html: str, sources: tuple[str, ...] | None, policy: str) -> str:
    digest = hashlib.sha256()
    digest.update(html.encode("utf-8"))
    digest.update(b"\x00")
    digest.update(",".join(sources or ()).encode("utf-8"))
    digest.update(b"\x00")
    digest.update(policy.encode("utf-8"))
    return digest.hexdigest()


class Linker:
    def __init__(
        self,
        store: ConceptStore,
        *,
        source_priority: tuple[str, ...] = DEFAULT_SOURCE_PRIORITY,
        cache_capacity: int = DEFAULT_CAPACITY,
        stopwords: frozenset[str] | None = None,
    ) -> None:
        self.store = store
        self.source_priority = tuple(source_priority)
        self.stopwords = stopwords
        self.index = build_index(store, stopwords)
        self.cache = LinkCache(cache_capacity)
        store.subscribe(self._on_change)

    def _on_change(self, event: ChangeEvent) -> None:
        self.index.apply_change(event)
        self.cache.invalidate_for_concept(event.concept, self.stopwords)

    def _filter_sources(
        self, mentions: list[Mention], allowed: tuple[str, ...]
    ) -> list[Mention]:
        allowed_set = set(allowed)
        kept = []
        for mention in mentions:
            candidates = frozenset(
                cid for cid in mention.candidates
                if self.store.get(cid).source in allowed_set
            )
            if candidates:
                kept.append(replace(mention, candidates=candidates))
        return kept

    def run_pipeline(
        self,
        html: str,
        *,
        policy: str = "first",
        sources: tuple[str, ...] | None = None,
    ) -> LinkResult:
        """Uncached discover -> resolve -> annotate."""
        mentions = discover_mentions(self.index, html, self.stopwords)
        if sources is not None:
            mentions = self._filter_sources(mentions, sources)
        resolutions = resolve(mentions, self.store, self.source_priority)
        return LinkResult(
            html=embed_links(html, resolutions, policy),
            annotations=tuple(standoff(html, resolutions)),
            resolutions=tuple(resolutions),
        )

    def annotate(
        self,
        html: str,
        *,
        policy: str = "first",
        sources: tuple[str, ...] | None = None,
        doc_id: str | None = None,
    ) -> LinkResult:
        """Cached pipeline run. doc_id defaults to the content hash, so
        anonymous requests still benefit from the cache."""
        key = content_hash(html, sources, policy)
        entry_id = doc_id if doc_id is not None else key
        cached = self.cache.get(entry_id, key)
        if cached is not None:
            return cached
        result = self.run_pipeline(html, policy=policy, sources=sources)
        self.cache.put(entry_id, key, result, document_words(html, self.stopwords))
        return result
