"""Phrase index with longest-match lookup.

The index is a trie over normalized, stopword-free token sequences.
Each node reached by a full phrase carries the ids of every concept
whose label or a synonym normalizes to that phrase, so lookup never
distinguishes labels from synonyms. A side table maps each phrase's
first token to the multiset of phrase lengths starting with it; it
bounds how far a lookup needs to walk and supplies the cache's
invalidation keys.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from typing import Sequence

from .errors import EmptyPhrase
from .normalize import normalize_phrase
from .store import ChangeEvent, Concept, ConceptStore

logger = logging.getLogger(__name__)


@dataclass
class _Node:
    children: dict[str, "_Node"] = field(default_factory=dict)
    ids: set[str] = field(default_factory=set)


def _phrases_of(concept: Concept, stopwords: frozenset[str] | None) -> set[tuple[str, ...]]:
    """Distinct normalized phrases contributed by a concept. The label is
    required to normalize; synonyms that normalize to nothing are dropped."""
    phrases: set[tuple[str, ...]] = set()
    try:
        phrases.add(tuple(normalize_phrase(concept.label, stopwords)))
    except EmptyPhrase:
        logger.warning("concept %s: label %r normalizes to nothing, not indexed",
                       concept.id, concept.label)
    for synonym in concept.synonyms:
        try:
            phrases.add(tuple(normalize_phrase(synonym, stopwords)))
        except EmptyPhrase:
            continue
    return phrases


def invalidation_keys(concept: Concept, stopwords: frozenset[str] | None = None) -> frozenset[str]:
    """First tokens of all the concept's normalized phrases (deduped).
    The cache expires any document containing one of these words."""
    return frozenset(phrase[0] for phrase in _phrases_of(concept, stopwords))


class ConceptIndex:
    """Trie over normalized phrases; supports incremental change events."""

    def __init__(self, stopwords: frozenset[str] | None = None) -> None:
        self._root = _Node()
        self._first_words: dict[str, dict[int, int]] = {}
        self._lock = threading.RLock()
        self._stopwords = stopwords
        self._phrase_count = 0

    def __len__(self) -> int:
        """Number of distinct indexed phrases."""
        return self._phrase_count

    def first_word_lengths(self, word: str) -> frozenset[int]:
        with self._lock:
            return frozenset(self._first_words.get(word, ()))

    def first_words(self) -> dict[str, set[int]]:
        with self._lock:
            return {w: set(lengths) for w, lengths in self._first_words.items()}

    # ------------------------------------------------------------ build

    def _insert(self, phrase: tuple[str, ...], concept_id: str) -> None:
        node = self._root
        for token in phrase:
            node = node.children.setdefault(token, _Node())
        if not node.ids:
            self._phrase_count += 1
        node.ids.add(concept_id)
        lengths = self._first_words.setdefault(phrase[0], {})
        lengths[len(phrase)] = lengths.get(len(phrase), 0) + 1

    def _remove(self, phrase: tuple[str, ...], concept_id: str) -> None:
        path: list[tuple[_Node, str]] = []
        node = self._root
        for token in phrase:
            child = node.children.get(token)
            if child is None:
                return
            path.append((node, token))
            node = child
        if concept_id not in node.ids:
            return
        node.ids.discard(concept_id)
        if not node.ids:
            self._phrase_count -= 1
        # prune childless nodes that no longer terminate any phrase
        for parent, token in reversed(path):
            child = parent.children[token]
            if child.ids or child.children:
                break
            del parent.children[token]
        lengths = self._first_words.get(phrase[0])
        if lengths is not None:
            count = lengths.get(len(phrase), 0) - 1
            if count > 0:
                lengths[len(phrase)] = count
            else:
                lengths.pop(len(phrase), None)
            if not lengths:
                del self._first_words[phrase[0]]

    def add_concept(self, concept: Concept) -> None:
        with self._lock:
            for phrase in _phrases_of(concept, self._stopwords):
                self._insert(phrase, concept.id)

    def remove_concept(self, concept: Concept) -> None:
        with self._lock:
            for phrase in _phrases_of(concept, self._stopwords):
                self._remove(phrase, concept.id)

    def apply_change(self, event: ChangeEvent) -> None:
        if event.kind == "added":
            self.add_concept(event.concept)
        elif event.kind == "removed":
            self.remove_concept(event.concept)
        else:
            raise ValueError(f"unknown change kind {event.kind!r}")

    # ----------------------------------------------------------- lookup

    def longest_match_at(
        self, tokens: Sequence[str], position: int
    ) -> tuple[int, frozenset[str]] | None:
        """Longest indexed phrase equal to tokens[position:position+L].

        Returns (L, concept ids) for the maximal L >= 1, or None. The
        first-word table caps the walk so misses stay cheap.
        """
        with self._lock:
            lengths = self._first_words.get(tokens[position])
            if not lengths:
                return None
            limit = min(max(lengths), len(tokens) - position)
            node = self._root
            best: tuple[int, frozenset[str]] | None = None
            for depth in range(limit):
                node = node.children.get(tokens[position + depth])
                if node is None:
                    break
                if node.ids:
                    best = (depth + 1, frozenset(node.ids))
            return best

    # ------------------------------------------------------ maintenance

    def phrases(self) -> dict[tuple[str, ...], frozenset[str]]:
        """Snapshot of every indexed phrase and its ids (tests, debug)."""
        out: dict[tuple[str, ...], frozenset[str]] = {}

        def walk(node: _Node, prefix: tuple[str, ...]) -> None:
            if node.ids:
                out[prefix] = frozenset(node.ids)
            for token, child in node.children.items():
                walk(child, prefix + (token,))

        with self._lock:
            walk(self._root, ())
        return out

    def derived_first_words(self) -> dict[str, set[int]]:
        """Recompute the first-word table from the trie alone; equality
        with first_words() is the structural consistency check."""
        derived: dict[str, set[int]] = {}
        for phrase in self.phrases():
            derived.setdefault(phrase[0], set()).add(len(phrase))
        return derived


def build_index(
    store: ConceptStore, stopwords: frozenset[str] | None = None
) -> ConceptIndex:
    index = ConceptIndex(stopwords)
    for concept in store.concepts():
        index.add_concept(concept)
    return index
