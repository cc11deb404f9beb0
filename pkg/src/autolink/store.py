"""Concept data model, registration, and the JSONL corpus format.

The store is the single owner of concept records. Other components
(index, cache) stay consistent by subscribing to its change events,
which are delivered synchronously in mutation order.
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable
from urllib.parse import urlsplit

from .errors import (
    DuplicateConcept,
    EmptyLabel,
    EmptyPhrase,
    InvalidMscCode,
    InvalidUrl,
    UnknownId,
)
from .normalize import normalize_phrase

logger = logging.getLogger(__name__)

_MSC_RE = re.compile(r"^[0-9]{2}[A-Z][0-9x][0-9x]$")

_RECORD_FIELDS = ("label", "synonyms", "msc", "source", "url")


@dataclass(frozen=True)
class MscCode:
    """A 5-character subject-classification code such as "81P40".

    Shape: two digits (area), one uppercase letter (subarea), two digits
    or "x" wildcards (detail). Malformed codes are rejected at parse
    time so the rest of the system never sees them.
    """

    code: str

    @classmethod
    def parse(cls, text: str) -> "MscCode":
        if not isinstance(text, str) or not _MSC_RE.match(text):
            raise InvalidMscCode(f"bad classification code: {text!r}")
        return cls(text)

    def __str__(self) -> str:
        return self.code


@dataclass
class Concept:
    """A linkable definition. Treated as immutable once registered."""

    id: str
    label: str
    synonyms: list[str]
    msc: list[MscCode]
    source: str
    url: str
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ChangeEvent:
    """Emitted by the store after every successful mutation."""

    kind: str  # "added" or "removed"
    concept: Concept


def _check_url(url: str) -> None:
    try:
        parts = urlsplit(url)
    except ValueError:
        raise InvalidUrl(f"unparseable url: {url!r}")
    if not parts.scheme or not (parts.netloc or parts.path):
        raise InvalidUrl(f"not an absolute url: {url!r}")


def _concept_id(source: str, label: str, url: str) -> str:
    # Content-derived so ids survive save/load round-trips and make
    # lexicographic tie-breaks reproducible across runs.
    digest = hashlib.blake2b(
        f"{source}\n{label}\n{url}".encode("utf-8"), digest_size=8
    )
    return digest.hexdigest()


class ConceptStore:
    """In-memory concept registry with serialized mutations."""

    def __init__(self) -> None:
        self._concepts: dict[str, Concept] = {}
        self._keys: set[tuple[str, str, str]] = set()
        self._lock = threading.RLock()
        self._subscribers: list[Callable[[ChangeEvent], None]] = []
        self.load_warnings: list[str] = []

    def __len__(self) -> int:
        return len(self._concepts)

    def __contains__(self, concept_id: str) -> bool:
        return concept_id in self._concepts

    def get(self, concept_id: str) -> Concept:
        try:
            return self._concepts[concept_id]
        except KeyError:
            raise UnknownId(f"no concept with id {concept_id!r}")

    def concepts(self) -> list[Concept]:
        with self._lock:
            return list(self._concepts.values())

    def sources(self) -> list[str]:
        with self._lock:
            return sorted({c.source for c in self._concepts.values()})

    def subscribe(self, callback: Callable[[ChangeEvent], None]) -> None:
        """Register a change listener. Callbacks run synchronously inside
        the mutation, so they must not mutate the store themselves."""
        with self._lock:
            self._subscribers.append(callback)

    def _emit(self, event: ChangeEvent) -> None:
        for callback in self._subscribers:
            callback(event)

    def add_concept(
        self,
        label: str,
        synonyms: Iterable[str] = (),
        msc: Iterable[MscCode | str] = (),
        source: str = "",
        url: str = "",
    ) -> str:
        try:
            normalize_phrase(label)
        except EmptyPhrase:
            raise EmptyLabel(f"label normalizes to nothing: {label!r}")
        _check_url(url)
        codes = [c if isinstance(c, MscCode) else MscCode.parse(c) for c in msc]
        with self._lock:
            key = (source, label, url)
            if key in self._keys:
                raise DuplicateConcept(f"already registered: {key!r}")
            concept_id = _concept_id(source, label, url)
            concept = Concept(concept_id, label, list(synonyms), codes, source, url)
            self._concepts[concept_id] = concept
            self._keys.add(key)
            self._emit(ChangeEvent("added", concept))
            return concept_id

    def remove_concept(self, concept_id: str) -> Concept:
        with self._lock:
            concept = self.get(concept_id)
            del self._concepts[concept_id]
            self._keys.discard((concept.source, concept.label, concept.url))
            self._emit(ChangeEvent("removed", concept))
            return concept


def load_corpus(path: str) -> ConceptStore:
    """Read a JSONL corpus. Malformed lines are skipped with a warning
    carrying the line number; loading never aborts on record errors."""
    store = ConceptStore()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                if not isinstance(record, dict):
                    raise ValueError("record is not an object")
                for name in ("label", "source", "url"):
                    if not isinstance(record.get(name), str):
                        raise ValueError(f"missing or non-string {name!r}")
                label = record["label"]
                source = record["source"]
                url = record["url"]
                synonyms = record.get("synonyms", [])
                msc = record.get("msc", [])
                if not isinstance(synonyms, list) or not all(
                    isinstance(s, str) for s in synonyms
                ):
                    raise ValueError("synonyms must be a list of strings")
                if not isinstance(msc, list):
                    raise ValueError("msc must be a list")
                extra = {k: v for k, v in record.items() if k not in _RECORD_FIELDS}
                concept_id = store.add_concept(label, synonyms, msc, source, url)
                if extra:
                    store.get(concept_id).extra.update(extra)
            except Exception as exc:
                message = f"line {lineno}: skipped record ({exc})"
                store.load_warnings.append(message)
                logger.warning("%s: %s", path, message)
    return store


def save_corpus(store: ConceptStore, path: str) -> int:
    """Write the store as JSONL (UTF-8, LF, no BOM). Returns the count."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for concept in store.concepts():
            record = {
                "label": concept.label,
                "synonyms": list(concept.synonyms),
                "msc": [str(code) for code in concept.msc],
                "source": concept.source,
                "url": concept.url,
            }
            record.update(concept.extra)
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
            count += 1
    return count


def validate_corpus(store: ConceptStore) -> list[str]:
    """Metadata-quality warnings; never mutates the store.

    Flags (a) the same normalized label defined more than once within a
    source and (b) a synonym that collides with another concept's label
    in the same source. Cross-source overloads are legitimate (the
    disambiguator exists for them) and are not flagged.
    """
    warnings: list[str] = []
    labels: dict[tuple[str, tuple[str, ...]], list[Concept]] = {}
    for concept in store.concepts():
        key = (concept.source, tuple(normalize_phrase(concept.label)))
        labels.setdefault(key, []).append(concept)
    for (source, phrase), group in sorted(labels.items()):
        if len(group) > 1:
            ids = ", ".join(sorted(c.id for c in group))
            warnings.append(
                f"source {source}: label {' '.join(phrase)!r} defined by {ids}"
            )
    for concept in store.concepts():
        for synonym in concept.synonyms:
            try:
                phrase = tuple(normalize_phrase(synonym))
            except EmptyPhrase:
                continue
            for other in labels.get((concept.source, phrase), []):
                if other.id != concept.id:
                    warnings.append(
                        f"source {concept.source}: synonym {synonym!r} of "
                        f"{concept.id} collides with label of {other.id}"
                    )
    return warnings
