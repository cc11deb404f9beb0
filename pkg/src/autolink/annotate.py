"""Turning resolutions into output: embedded links or stand-off records.

Embedding splices anchor tags into the original bytes at the recorded
spans instead of re-serializing a parse tree, so every byte the input
had is still there afterwards, malformed markup included. Stand-off
output leaves the document alone entirely.
"""

from __future__ import annotations

import html as _html
import re
from dataclasses import dataclass

from .disambiguate import Resolution
from .errors import SpanMismatch

ANCHOR_CLASS = "nnexus_concept"

POLICIES = ("first", "all")

# wrapper tags as this module emits them; used to spot already-linked
# concepts so a repeated pass does not wrap a later occurrence
_EXISTING_LINK_RE = re.compile(
    r'<a class="nnexus_concept" data-concept="([^"]+)"'
)


@dataclass(frozen=True)
class Annotation:
    """Stand-off record for one resolved mention (JSON-serializable)."""

    start: int
    end: int
    surface: str
    concept: str
    href: str
    source: str
    msc: tuple[str, ...]

    def as_record(self) -> dict:
        return {
            "start": self.start,
            "end": self.end,
            "surface": self.surface,
            "concept": self.concept,
            "href": self.href,
            "source": self.source,
            "msc": list(self.msc),
        }


def _attr(value: str) -> str:
    return _html.escape(value, quote=True)


def _check_spans(data: bytes, resolutions: list[Resolution]) -> None:
    for resolution in resolutions:
        mention = resolution.mention
        if data[mention.start:mention.end] != mention.surface.encode("utf-8"):
            raise SpanMismatch(
                f"span [{mention.start},{mention.end}) does not slice to "
                f"{mention.surface!r}; resolutions are stale for this input"
            )


def _select_first_per_concept(
    html: str, resolutions: list[Resolution]
) -> list[Resolution]:
    """Earliest mention per concept id; ids already wrapped somewhere in
    the input count as linked, which makes a second pass a no-op."""
    linked = set(_EXISTING_LINK_RE.findall(html))
    selected = []
    for resolution in sorted(resolutions, key=lambda r: r.mention.start):
        if resolution.chosen in linked:
            continue
        linked.add(resolution.chosen)
        selected.append(resolution)
    return selected


def embed_links(html: str, resolutions: list[Resolution], policy: str = "first") -> str:
    """Wrap resolved mentions as anchor elements, splicing at byte
    offsets; all bytes outside the wrapped spans are preserved exactly."""
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    data = html.encode("utf-8")
    _check_spans(data, resolutions)
    if policy == "first":
        selected = _select_first_per_concept(html, resolutions)
    else:
        selected = sorted(resolutions, key=lambda r: r.mention.start)
    parts = []
    position = 0
    for resolution in selected:
        mention, concept = resolution.mention, resolution.concept
        opener = (
            f'<a class="{ANCHOR_CLASS}"'
            f' data-concept="{_attr(resolution.chosen)}"'
            f' data-source="{_attr(concept.source)}"'
            f' href="{_attr(concept.url)}">'
        )
        parts.append(data[position:mention.start])
        parts.append(opener.encode("utf-8"))
        parts.append(data[mention.start:mention.end])
        parts.append(b"</a>")
        position = mention.end
    parts.append(data[position:])
    return b"".join(parts).decode("utf-8")


def standoff(html: str, resolutions: list[Resolution]) -> list[Annotation]:
    """All resolutions as stand-off records, sorted by start; the
    document itself is untouched (policy never applies here)."""
    data = html.encode("utf-8")
    _check_spans(data, resolutions)
    records = [
        Annotation(
            start=r.mention.start,
            end=r.mention.end,
            surface=r.mention.surface,
            concept=r.chosen,
            href=r.concept.url,
            source=r.concept.source,
            msc=tuple(str(code) for code in r.concept.msc),
        )
        for r in resolutions
    ]
    records.sort(key=lambda a: a.start)
    return records
