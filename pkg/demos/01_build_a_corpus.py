#!/usr/bin/env python3
"""Build a concept corpus by hand, save it, and load it back.

The store is the single source of truth for everything downstream:
the index, the disambiguator, and the cache all hang off it. This
script walks through adding concepts, the validation the store
performs, and the newline-delimited JSON format used on disk.
"""

import tempfile
from pathlib import Path

from autolink import (
    ConceptStore,
    DuplicateConcept,
    InvalidMscCode,
    load_corpus,
    save_corpus,
    validate_corpus,
)

store = ConceptStore()

# Labels are free text; classification codes are checked on entry.
group_id = store.add_concept(
    "group",
    synonyms=["groups"],
    msc=["20A05"],
    source="planetmath",
    url="https://planetmath.org/group",
)
print("added 'group' with id", group_id)

store.add_concept(
    "abelian group",
    synonyms=["commutative group"],
    msc=["20K01"],
    source="planetmath",
    url="https://planetmath.org/abeliangroup",
)

# The same label may exist under a different source. That is not a
# duplicate; it is an ambiguity the resolver will handle later.
store.add_concept(
    "group",
    synonyms=[],
    msc=["20A05"],
    source="wikipedia",
    url="https://en.wikipedia.org/wiki/Group_(mathematics)",
)

# Exact re-registration (same source, label, and URL) is rejected.
try:
    store.add_concept("group", [], [], "planetmath", "https://planetmath.org/group")
except DuplicateConcept as exc:
    print("duplicate rejected:", exc)

# A merely similar entry gets in; the store is not the place to guess
# intent. validate_corpus surfaces such near-collisions at the end.
store.add_concept("groups", [], [], "planetmath", "https://planetmath.org/groups")

# Malformed classification codes never enter the store.
try:
    store.add_concept("bad", [], ["20A5"], "planetmath", "https://planetmath.org/bad")
except InvalidMscCode as exc:
    print("bad code rejected:", exc)

print("store now holds", len(store.concepts()), "concepts from", sorted(store.sources()))

# Round-trip through the on-disk format: one JSON object per line,
# keys sorted, so diffs stay readable under version control.
with tempfile.TemporaryDirectory() as scratch:
    path = Path(scratch) / "corpus.jsonl"
    save_corpus(store, path)
    print("\nfirst line of the saved file:")
    print(path.read_text(encoding="utf-8").splitlines()[0])

    reloaded = load_corpus(path)
    assert {c.label for c in reloaded.concepts()} == {c.label for c in store.concepts()}
    print("reloaded", len(reloaded.concepts()), "concepts, no warnings:", reloaded.load_warnings)

# validate_corpus reports label collisions inside a single source,
# which usually point at a harvesting bug upstream.
problems = validate_corpus(store)
print("validation problems:", problems or "none")
