"""Harvester: rule registry, fixture-page extraction, determinism."""

from __future__ import annotations

import json

import pytest

from autolink.errors import DuplicateSource, UnknownSource
from autolink.harvest import (
    HarvestReport,
    IndexerRegistry,
    IndexerRule,
    NodeSelector,
    harvest_document,
    load_rules,
)
from autolink.store import ConceptStore

PLANETMATH_RULE = IndexerRule(
    source="planetmath",
    term=NodeSelector(element="span", attr="data-defines"),
    msc=NodeSelector(element="span", attr="class", attr_value="msc"),
    url="document",
)

DLMF_RULE = IndexerRule(
    source="dlmf",
    term=NodeSelector(element="b", ancestor="a"),
    url="anchor-href",
)

PLANETMATH_PAGE = """
<html><body>
  <article>
    <h1><span data-defines="group">group</span></h1>
    <p>A <span data-defines="abelian group">abelian group</span> is ...</p>
    <p class="classification"><span class="msc">20A05</span> <span class="msc">20K01</span></p>
  </article>
</body></html>
"""

DLMF_PAGE = """
<html><body><ul>
  <li><a href="/idp"><b>incomplete gamma function</b></a></li>
  <li><a href="sec/igb.html"><b>incomplete beta function</b></a></li>
  <li><a href="https://dlmf.example/abs"><b>absolute value</b></a></li>
  <li><a><b>orphan term</b></a></li>
</ul></body></html>
"""


def _registry():
    registry = IndexerRegistry()
    registry.register(PLANETMATH_RULE)
    registry.register(DLMF_RULE)
    return registry


def test_registry_register_get_duplicate_unknown():
    registry = _registry()
    assert registry.get("planetmath") is PLANETMATH_RULE
    assert registry.sources() == ["dlmf", "planetmath"]
    with pytest.raises(DuplicateSource):
        registry.register(PLANETMATH_RULE)
    with pytest.raises(UnknownSource):
        registry.get("wikipedia")


def test_planetmath_style_extraction():
    store = ConceptStore()
    report = harvest_document(
        _registry(), "planetmath", PLANETMATH_PAGE, "https://pm.example/group", store
    )
    assert (report.added, report.skipped) == (2, 0)
    by_label = {c.label: c for c in store.concepts()}
    assert set(by_label) == {"group", "abelian group"}
    for concept in by_label.values():
        assert [str(code) for code in concept.msc] == ["20A05", "20K01"]
        assert concept.url == "https://pm.example/group"
        assert concept.source == "planetmath"


def test_dlmf_style_extraction_resolves_relative_urls():
    store = ConceptStore()
    report = harvest_document(
        _registry(), "dlmf", DLMF_PAGE, "https://dlmf.example/idx/front.html", store
    )
    assert report.added == 3
    assert report.skipped == 1  # anchored term without an href to follow
    assert any("no anchor href" in w for w in report.warnings)
    by_label = {c.label: c.url for c in store.concepts()}
    assert by_label == {
        "incomplete gamma function": "https://dlmf.example/idp",
        "incomplete beta function": "https://dlmf.example/idx/sec/igb.html",
        "absolute value": "https://dlmf.example/abs",
    }


def test_zero_matches_zero_counts():
    store = ConceptStore()
    report = harvest_document(
        _registry(), "planetmath", "<p>no defined terms here</p>", "https://x/", store
    )
    assert (report.added, report.skipped) == (0, 0)
    assert len(store) == 0


def test_double_harvest_is_deterministic():
    store = ConceptStore()
    first = harvest_document(_registry(), "dlmf", DLMF_PAGE, "https://d/x", store)
    second = harvest_document(_registry(), "dlmf", DLMF_PAGE, "https://d/x", store)
    assert (first.added, second.added) == (3, 0)
    assert second.skipped == first.added + 1
    assert len(store) == 3


def test_unknown_source_raises():
    with pytest.raises(UnknownSource):
        harvest_document(IndexerRegistry(), "nope", "<p/>", "https://x/", ConceptStore())


def test_label_whitespace_is_collapsed():
    html = '<a href="/t"><b>  incomplete\n   gamma\tfunction </b></a>'
    store = ConceptStore()
    harvest_document(_registry(), "dlmf", html, "https://d/", store)
    assert store.concepts()[0].label == "incomplete gamma function"


def test_inverted_title_restores_reading_order():
    registry = IndexerRegistry()
    registry.register(
        IndexerRule(
            source="inv",
            term=NodeSelector(element="b", ancestor="a"),
            url="anchor-href",
            inverted_title=True,
        )
    )
    html = '<a href="/c"><b>group, abelian</b></a> <a href="/p"><b>permanent</b></a>'
    store = ConceptStore()
    report = harvest_document(registry, "inv", html, "https://s/", store)
    assert report.added == 2
    assert {c.label for c in store.concepts()} == {"abelian group", "permanent"}


def test_malformed_classification_codes_are_warned_and_ignored():
    html = """
    <span data-defines="x">thing</span>
    <span class="msc">20A05 garbage 05c99</span>
    """
    store = ConceptStore()
    report = harvest_document(_registry(), "planetmath", html, "https://s/", store)
    assert report.added == 1
    assert [str(c) for c in store.concepts()[0].msc] == ["20A05"]
    assert len(report.warnings) == 2


def test_malformed_html_never_fatal():
    html = "<div><span data-defines='x'>term<div></span><p>oops"
    store = ConceptStore()
    report = harvest_document(_registry(), "planetmath", html, "https://s/", store)
    assert report.added == 1


def test_selector_attr_value_and_ancestor_filters():
    selector = NodeSelector(element="span", attr="class", attr_value="msc")
    rule = IndexerRule(source="s", term=selector)
    registry = IndexerRegistry()
    registry.register(rule)
    html = '<span class="other">A</span><span class="msc">B</span>'
    store = ConceptStore()
    report = harvest_document(registry, "s", html, "https://s/", store)
    assert report.added == 1
    assert store.concepts()[0].label == "B"


def test_rule_rejects_unknown_url_mode():
    with pytest.raises(ValueError):
        IndexerRule(source="s", term=NodeSelector(element="b"), url="guess")


def test_load_rules_jsonl(tmp_path):
    path = tmp_path / "rules.jsonl"
    lines = [
        json.dumps(
            {
                "source": "planetmath",
                "term": {"element": "span", "attr": "data-defines",
                         "attr_value": None, "ancestor": None},
                "msc": {"element": "span", "attr": "class", "attr_value": "msc",
                        "ancestor": None},
                "url": "document",
                "inverted_title": False,
            }
        ),
        json.dumps(
            {
                "source": "dlmf",
                "term": {"element": "b", "attr": None, "attr_value": None,
                         "ancestor": "a"},
                "msc": None,
                "url": "anchor-href",
                "inverted_title": False,
            }
        ),
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    rules = load_rules(str(path))
    assert [r.source for r in rules] == ["planetmath", "dlmf"]
    assert rules[0] == PLANETMATH_RULE
    assert rules[1] == DLMF_RULE


def test_load_rules_reports_bad_line(tmp_path):
    path = tmp_path / "rules.jsonl"
    path.write_text('{"source": "x"}\n', encoding="utf-8")
    with pytest.raises(ValueError, match="line 1"):
        load_rules(str(path))


def test_harvest_report_counts_invariant():
    report = HarvestReport()
    assert report.added == 0 and report.skipped == 0 and report.warnings == []
