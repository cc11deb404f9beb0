"""Finding concept mentions in HTML.

Input documents are arbitrary, possibly malformed HTML, so parsing is
lenient (stdlib html.parser) and nothing here ever rewrites the input:
discovery only reports byte spans into it. Text inside elements that
must not gain links (existing anchors, code, pre, script, style, math,
annotation, anything marked data-nolink) is skipped entirely. Inline
dollar-math runs split a text segment: a phrase cannot reach across a
formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from html.parser import HTMLParser

from .index import ConceptIndex
from .normalize import _byte_table, tokenize_with_offsets

EXCLUDED_ELEMENTS = frozenset(
    {"a", "code", "pre", "script", "style", "math", "annotation"}
)
NOLINK_ATTR = "data-nolink"

# elements that never hold content and never appear on the open stack
_VOID_ELEMENTS = frozenset(
    {"area", "base", "br", "col", "embed", "hr", "img", "input",
     "link", "meta", "param", "source", "track", "wbr"}
)

# $...$ or $$...$$ with no dollar inside; unpaired dollars stay text
_MATH_ISLAND_RE = re.compile(r"\$\$[^$]*\$\$|\$[^$]*\$")


@dataclass(frozen=True)
class Mention:
    """One discovered occurrence of an indexed phrase.

    start/end are byte offsets into the original HTML (UTF-8, end
    exclusive); surface is exactly the slice at [start, end); phrase is
    the normalized token sequence that matched; candidates are ids of
    every concept indexed under that phrase.
    """

    start: int
    end: int
    surface: str
    phrase: tuple[str, ...]
    candidates: frozenset[str]


class _SegmentCollector(HTMLParser):
    """Collects linkable text nodes with their codepoint offsets.

    Keeps a full open-element stack (tag, suppressing) so that closing
    an inner non-suppressing element never ends an outer suppressed
    region; end tags pop to their nearest matching open, which is how
    browsers recover from misnesting.
    """

    def __init__(self, text: str) -> None:
        super().__init__(convert_charrefs=False)
        self._text = text
        self._line_starts = [0] + [i + 1 for i, ch in enumerate(text) if ch == "\n"]
        self._stack: list[tuple[str, bool]] = []
        self._suppressed = 0
        self.segments: list[tuple[str, int]] = []

    def _offset(self) -> int:
        line, column = self.getpos()
        return self._line_starts[line - 1] + column

    def handle_starttag(self, tag, attrs):
        if tag in _VOID_ELEMENTS:
            return
        suppressing = tag in EXCLUDED_ELEMENTS or any(
            name == NOLINK_ATTR for name, _ in attrs
        )
        self._stack.append((tag, suppressing))
        if suppressing:
            self._suppressed += 1

    def handle_endtag(self, tag):
        for i in range(len(self._stack) - 1, -1, -1):
            if self._stack[i][0] == tag:
                for _, suppressing in self._stack[i:]:
                    if suppressing:
                        self._suppressed -= 1
                del self._stack[i:]
                return

    def handle_data(self, data):
        if data and not self._suppressed:
            self.segments.append((data, self._offset()))


def _text_segments(html: str) -> list[tuple[str, int]]:
    collector = _SegmentCollector(html)
    collector.feed(html)
    collector.close()
    return collector.segments


def linkable_segments(html: str) -> list[tuple[str, int]]:
    """Text content outside excluded elements, in document order, each
    with the byte offset of its first character in the original input."""
    table = None if html.isascii() else _byte_table(html)
    out = []
    for text, cp_offset in _text_segments(html):
        out.append((text, cp_offset if table is None else table[cp_offset]))
    return out


def _split_math_islands(text: str) -> list[tuple[str, int]]:
    """Pieces of text outside $...$ / $$...$$ runs, with codepoint
    offsets relative to text."""
    pieces = []
    last = 0
    for match in _MATH_ISLAND_RE.finditer(text):
        if match.start() > last:
            pieces.append((text[last:match.start()], last))
        last = match.end()
    if last < len(text):
        pieces.append((text[last:], last))
    return pieces


def document_words(html: str, stopwords: frozenset[str] | None = None) -> frozenset[str]:
    """Every normalized content word in the document's linkable text.
    This is the cache's first-word footprint for the document."""
    words = set()
    for text, _ in _text_segments(html):
        for token in tokenize_with_offsets(text, stopwords):
            if token.norm:
                words.add(token.norm)
    return frozenset(words)


def discover_mentions(
    index: ConceptIndex, html: str, stopwords: frozenset[str] | None = None
) -> list[Mention]:
    """Greedy left-to-right longest-match scan over the linkable text.

    At each content-token position the longest indexed phrase wins and
    scanning resumes after it, so mentions never overlap. Interior
    stopwords sit inside a mention's surface but not in its phrase.
    """
    table = None if html.isascii() else _byte_table(html)
    data = html.encode("utf-8") if table is not None else None
    mentions: list[Mention] = []
    for text, seg_cp in _text_segments(html):
        for piece, piece_cp in _split_math_islands(text):
            base_cp = seg_cp + piece_cp
            base = base_cp if table is None else table[base_cp]
            tokens = [t for t in tokenize_with_offsets(piece, stopwords) if t.norm]
            norms = [t.norm for t in tokens]
            position = 0
            while position < len(norms):
                hit = index.longest_match_at(norms, position)
                if hit is None:
                    position += 1
                    continue
                length, candidates = hit
                start = base + tokens[position].start
                end = base + tokens[position + length - 1].end
                if data is None:
                    surface = html[start:end]
                else:
                    surface = data[start:end].decode("utf-8")
                mentions.append(
                    Mention(start, end, surface, tuple(norms[position:position + length]), candidates)
                )
                position += length
    return mentions
