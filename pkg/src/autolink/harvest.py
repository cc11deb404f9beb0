"""Rule-driven concept extraction from source pages.

Each source gets one declarative rule instead of custom code: where
defined terms live (element plus optional attribute/ancestor tests),
where classification codes live, and how to derive the target URL.
Harvesting parses a locally supplied page leniently, applies the rule,
and registers every extracted term in the concept store.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import Iterable
from urllib.parse import urljoin

from .errors import (
    DuplicateConcept,
    DuplicateSource,
    EmptyLabel,
    InvalidMscCode,
    InvalidUrl,
    UnknownSource,
)
from .store import ConceptStore, MscCode

logger = logging.getLogger(__name__)

_VOID_ELEMENTS = frozenset(
    {"area", "base", "br", "col", "embed", "hr", "img", "input",
     "link", "meta", "param", "source", "track", "wbr"}
)

URL_RULES = ("document", "anchor-href")


@dataclass(frozen=True)
class NodeSelector:
    """Matches elements by name, optional attribute presence/value, and
    optional required ancestor element."""

    element: str
    attr: str | None = None
    attr_value: str | None = None
    ancestor: str | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "NodeSelector":
        return cls(
            element=data["element"],
            attr=data.get("attr"),
            attr_value=data.get("attr_value"),
            ancestor=data.get("ancestor"),
        )


@dataclass(frozen=True)
class IndexerRule:
    """One source's extraction recipe."""

    source: str
    term: NodeSelector
    msc: NodeSelector | None = None
    url: str = "document"
    inverted_title: bool = False

    def __post_init__(self) -> None:
        if self.url not in URL_RULES:
            raise ValueError(f"url rule must be one of {URL_RULES}, got {self.url!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "IndexerRule":
        return cls(
            source=data["source"],
            term=NodeSelector.from_dict(data["term"]),
            msc=NodeSelector.from_dict(data["msc"]) if data.get("msc") else None,
            url=data.get("url", "document"),
            inverted_title=bool(data.get("inverted_title", False)),
        )


@dataclass
class HarvestReport:
    added: int = 0
    skipped: int = 0
    warnings: list[str] = field(default_factory=list)


class IndexerRegistry:
    def __init__(self) -> None:
        self._rules: dict[str, IndexerRule] = {}

    def register(self, rule: IndexerRule) -> None:
        if rule.source in self._rules:
            raise DuplicateSource(f"rule for {rule.source!r} already registered")
        self._rules[rule.source] = rule

    def get(self, source: str) -> IndexerRule:
        try:
            return self._rules[source]
        except KeyError:
            raise UnknownSource(f"no rule registered for {source!r}")

    def sources(self) -> list[str]:
        return sorted(self._rules)


def load_rules(path: str) -> list[IndexerRule]:
    """Rule file: one JSON object per line."""
    rules = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rules.append(IndexerRule.from_dict(json.loads(line)))
            except Exception as exc:
                raise ValueError(f"{path}: line {lineno}: bad rule ({exc})")
    return rules


# --------------------------------------------------------------- mini DOM


@dataclass
class _Element:
    tag: str
    attrs: dict[str, str | None]
    parent: "_Element | None"
    children: list["_Element | str"] = field(default_factory=list)

    def text(self) -> str:
        pieces = []
        for child in self.children:
            if isinstance(child, str):
                pieces.append(child)
            else:
                pieces.append(child.text())
        return "".join(pieces)

    def walk(self) -> Iterable["_Element"]:
        for child in self.children:
            if isinstance(child, _Element):
                yield child
                yield from child.walk()

    def ancestors(self) -> Iterable["_Element"]:
        node = self.parent
        while node is not None:
            yield node
            node = node.parent


class _TreeBuilder(HTMLParser):
    """Lenient tree: stray end tags are ignored, unclosed elements close
    at the nearest matching open, voids never stay open."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = _Element("#root", {}, None)
        self._open = [self.root]

    def handle_starttag(self, tag, attrs):
        element = _Element(tag, dict(attrs), self._open[-1])
        self._open[-1].children.append(element)
        if tag not in _VOID_ELEMENTS:
            self._open.append(element)

    def handle_endtag(self, tag):
        for i in range(len(self._open) - 1, 0, -1):
            if self._open[i].tag == tag:
                del self._open[i:]
                return

    def handle_data(self, data):
        if data:
            self._open[-1].children.append(data)


def _parse_tree(html: str) -> _Element:
    builder = _TreeBuilder()
    builder.feed(html)
    builder.close()
    return builder.root


def _matches(node: _Element, selector: NodeSelector) -> bool:
    if node.tag != selector.element:
        return False
    if selector.attr is not None:
        if selector.attr not in node.attrs:
            return False
        if selector.attr_value is not None and node.attrs[selector.attr] != selector.attr_value:
            return False
    if selector.ancestor is not None:
        if not any(a.tag == selector.ancestor for a in node.ancestors()):
            return False
    return True


def _collapse(text: str) -> str:
    return " ".join(text.split())


def _reading_order(label: str) -> str:
    """Index headings come comma-inverted ("symbols, Christoffel");
    reverse the parts to restore reading order."""
    parts = [p.strip() for p in label.split(",")]
    return " ".join(reversed(parts))


def _target_url(rule: IndexerRule, node: _Element, document_url: str) -> str | None:
    if rule.url == "document":
        return document_url
    anchor = None
    if node.tag == "a" and "href" in node.attrs:
        anchor = node
    else:
        for candidate in node.ancestors():
            if candidate.tag == "a" and "href" in candidate.attrs:
                anchor = candidate
                break
    if anchor is None or not anchor.attrs.get("href"):
        return None
    return urljoin(document_url, anchor.attrs["href"])


def harvest_document(
    registry: IndexerRegistry,
    source: str,
    html: str,
    document_url: str,
    store: ConceptStore,
) -> HarvestReport:
    """Apply a source's rule to one page and register what it finds.

    Every extracted term is either added or counted as skipped (with a
    warning when skipping was not a plain duplicate); the input page is
    never modified.
    """
    rule = registry.get(source)
    root = _parse_tree(html)
    report = HarvestReport()

    codes: list[str] = []
    if rule.msc is not None:
        seen = set()
        for node in root.walk():
            if _matches(node, rule.msc):
                for piece in _collapse(node.text()).replace(",", " ").split():
                    if piece in seen:
                        continue
                    try:
                        MscCode.parse(piece)
                    except InvalidMscCode:
                        report.warnings.append(f"ignoring malformed code {piece!r}")
                        continue
                    seen.add(piece)
                    codes.append(piece)

    for node in root.walk():
        if not _matches(node, rule.term):
            continue
        label = _collapse(node.text())
        if rule.inverted_title and "," in label:
            label = _reading_order(label)
        url = _target_url(rule, node, document_url)
        if url is None:
            report.skipped += 1
            report.warnings.append(f"term {label!r}: no anchor href for url rule")
            continue
        try:
            store.add_concept(label, [], codes, source, url)
            report.added += 1
        except DuplicateConcept:
            report.skipped += 1
        except (EmptyLabel, InvalidUrl) as exc:
            report.skipped += 1
            report.warnings.append(f"term {label!r}: {exc}")
    return report
