"""Choosing one concept per mention.

Ambiguity is resolved by context: every unambiguous mention in the
document contributes its concept as an anchor, and each ambiguous
mention picks the candidate whose subject classification sits closest
to those anchors in aggregate. Classification distance is hierarchical
over the 5-character code: same code 0, same 3-character prefix 1,
same 2-digit area 2, otherwise 3.
"""

from __future__ import annotations

from dataclasses import dataclass

from .discovery import Mention
from .store import Concept, ConceptStore, MscCode

# Corpus-native sources first; used only to break exact score ties.
DEFAULT_SOURCE_PRIORITY: tuple[str, ...] = (
    "planetmath",
    "dlmf",
    "encyclopediaofmath",
    "mathworld",
    "wikipedia",
    "nlab",
    "mathhub",
)


@dataclass(frozen=True)
class Resolution:
    """A mention bound to a single chosen concept.

    method is "unique" (single candidate), "cluster" (anchor distances
    decided), or "fallback" (no anchors; tie-break order alone decided).
    """

    mention: Mention
    chosen: str
    score: int
    method: str
    concept: Concept


def msc_distance(a: MscCode, b: MscCode) -> int:
    if a.code == b.code:
        return 0
    if a.code[:3] == b.code[:3]:
        return 1
    if a.code[:2] == b.code[:2]:
        return 2
    return 3


def concept_distance(x: Concept, y: Concept) -> int:
    """Closest pair of their codes; concepts without codes are maximally
    distant from everything (they can win by uniqueness or tie-break,
    never on clustering evidence)."""
    if not x.msc or not y.msc:
        return 3
    return min(msc_distance(a, b) for a in x.msc for b in y.msc)


def resolve(
    mentions: list[Mention],
    store: ConceptStore,
    source_priority: tuple[str, ...] | None = None,
) -> list[Resolution]:
    """Resolve every mention to one candidate.

    Anchors are the concepts of all single-candidate mentions, kept
    with multiplicity (a context word used three times counts three
    times). Multi-candidate mentions take the candidate minimizing the
    summed distance to the anchors; ties fall to source priority, then
    to concept id so the outcome is total and reproducible.
    """
    priority = DEFAULT_SOURCE_PRIORITY if source_priority is None else tuple(source_priority)

    def rank(source: str) -> int:
        try:
            return priority.index(source)
        except ValueError:
            return len(priority)

    anchors = [
        store.get(next(iter(m.candidates))) for m in mentions if len(m.candidates) == 1
    ]
    resolutions = []
    for mention in mentions:
        if len(mention.candidates) == 1:
            chosen = next(iter(mention.candidates))
            resolutions.append(
                Resolution(mention, chosen, 0, "unique", store.get(chosen))
            )
            continue
        scored = []
        for concept_id in sorted(mention.candidates):
            concept = store.get(concept_id)
            total = sum(concept_distance(concept, anchor) for anchor in anchors)
            scored.append((total, rank(concept.source), concept_id, concept))
        total, _, concept_id, concept = min(scored, key=lambda s: s[:3])
        method = "cluster" if anchors else "fallback"
        resolutions.append(Resolution(mention, concept_id, total, method, concept))
    return resolutions
