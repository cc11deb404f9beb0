"""Token and phrase normalization.

Everything that compares text in this package goes through here first:
concept labels at index time and document text at discovery time are
reduced to the same shape (NFC, lowercased, stopwords blanked, plural
suffixes stripped) so that "Groups" in a document can meet "group" in
the index. Offsets are byte offsets into the UTF-8 encoding of the
source string, because annotation later splices the document at the
byte level.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from importlib import resources

from .errors import EmptyPhrase

# A token is a run of word characters; internal hyphens glue compounds
# like "well-defined" into one token. Underscore is excluded from \w on
# purpose: it is a markup character, not prose.
_TOKEN_RE = re.compile(r"[^\W_]+(?:-[^\W_]+)*", re.UNICODE)

_stopword_cache: frozenset[str] | None = None


def load_stopwords(path: str) -> frozenset[str]:
    """Read one lowercase stopword per line; blank lines are ignored."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(line.strip() for line in fh if line.strip())


def default_stopwords() -> frozenset[str]:
    """The stopword list shipped with the package (loaded once)."""
    global _stopword_cache
    if _stopword_cache is None:
        text = resources.files("autolink.data").joinpath("stopwords.txt").read_text("utf-8")
        _stopword_cache = frozenset(line.strip() for line in text.splitlines() if line.strip())
    return _stopword_cache


@dataclass(frozen=True)
class TokenSpan:
    """One document token: the raw surface, its normalized form (may be
    "" for stopwords), and its [start, end) byte span in the source."""

    surface: str
    norm: str
    start: int
    end: int


def _strip_plural(token: str) -> str:
    # Ordered rules, first match wins. Deliberately minimal: plural
    # suffixes only, nothing Porter-style.
    if token.endswith("ies") and len(token) > 4:
        return token[:-3] + "y"
    if token.endswith("sses"):
        return token[:-2]
    if token.endswith("es") and (token[-3:-2] in ("s", "x", "z") or token[-4:-2] in ("ch", "sh")):
        return token[:-2]
    if token.endswith("s") and len(token) > 3 and not token.endswith(("ss", "us", "is")):
        return token[:-1]
    return token


def normalize_token(token: str, stopwords: frozenset[str] | None = None) -> str:
    """Map one token to its comparison form; stopwords map to ""."""
    if stopwords is None:
        stopwords = default_stopwords()
    low = unicodedata.normalize("NFC", token).lower()
    if low in stopwords:
        return ""
    return _strip_plural(low)


def _byte_table(text: str) -> list[int]:
    """table[i] = byte offset of codepoint i in text's UTF-8 encoding."""
    table = [0] * (len(text) + 1)
    pos = 0
    for i, ch in enumerate(text):
        table[i] = pos
        pos += len(ch.encode("utf-8"))
    table[len(text)] = pos
    return table


def tokenize_with_offsets(text: str, stopwords: frozenset[str] | None = None) -> list[TokenSpan]:
    """Split text into TokenSpans with byte offsets into its UTF-8 form.

    Slicing text.encode("utf-8") at [start, end) always reproduces the
    surface exactly; normalizing a returned norm again is a no-op.
    """
    table = None if text.isascii() else _byte_table(text)
    spans = []
    for match in _TOKEN_RE.finditer(text):
        start, end = match.span()
        if table is not None:
            start, end = table[start], table[end]
        surface = match.group()
        spans.append(TokenSpan(surface, normalize_token(surface, stopwords), start, end))
    return spans


def normalize_phrase(phrase: str, stopwords: frozenset[str] | None = None) -> list[str]:
    """Normalized content tokens of a phrase, stopwords dropped.

    Raises EmptyPhrase when nothing survives, so callers never index or
    match an empty key.
    """
    norms = [t.norm for t in tokenize_with_offsets(phrase, stopwords) if t.norm]
    if not norms:
        raise EmptyPhrase(f"no content tokens in {phrase!r}")
    return norms
