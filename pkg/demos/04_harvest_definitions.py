#!/usr/bin/env python3
"""Grow a corpus automatically from encyclopedia-style pages.

Every site marks up its defined terms differently, so extraction is
driven by per-source rules: a selector for the term nodes, optionally
one for classification codes, and a recipe for the concept URL.
"""

import json
import tempfile
from pathlib import Path

from autolink import (
    ConceptStore,
    IndexerRegistry,
    IndexerRule,
    NodeSelector,
    harvest_document,
    load_rules,
    save_corpus,
)

registry = IndexerRegistry()

# Style one: terms carry a metadata attribute, codes sit in a classed
# span anywhere on the page, and the page URL is the concept URL.
registry.register(IndexerRule(
    source="planetmath",
    term=NodeSelector(element="span", attr="data-defines"),
    msc=NodeSelector(element="span", attr="class", attr_value="msc"),
    url="document",
))

# Style two: terms are bold text inside anchors, and each anchor's
# href (resolved against the page URL) is the concept URL.
registry.register(IndexerRule(
    source="dlmf",
    term=NodeSelector(element="b", ancestor="a"),
    url="anchor-href",
))

planetmath_page = """
<article>
  <h1><span data-defines="group">group</span></h1>
  <p>A <span data-defines="monoid">monoid</span> whose elements invert.</p>
  <p class="footer"><span class="msc">20A05</span></p>
</article>
"""

dlmf_page = """
<ul>
  <li><a href="/idx/gamma"><b>gamma function</b></a></li>
  <li><a href="bessel.html"><b>Bessel function</b></a></li>
</ul>
"""

store = ConceptStore()

report = harvest_document(
    registry, "planetmath", planetmath_page,
    "https://planetmath.org/group", store,
)
print("planetmath:", report.added, "added,", report.skipped, "skipped")

report = harvest_document(
    registry, "dlmf", dlmf_page,
    "https://dlmf.example/idx/front.html", store,
)
print("dlmf:      ", report.added, "added,", report.skipped, "skipped")

for concept in store.concepts():
    codes = [m.code for m in concept.msc]
    print(f"  {concept.source:11s} {concept.label!r:25s} {codes} {concept.url}")

# Harvesting the same page again adds nothing; known terms are skipped,
# so a crawler can revisit pages freely.
again = harvest_document(
    registry, "planetmath", planetmath_page,
    "https://planetmath.org/group", store,
)
print("re-harvest:", again.added, "added,", again.skipped, "skipped")

# Rules serialize to the same line-oriented JSON as corpora do, so a
# deployment can ship its scraping config next to its data.
with tempfile.TemporaryDirectory() as scratch:
    rules_path = Path(scratch) / "rules.jsonl"
    rules_path.write_text(json.dumps({
        "source": "mathworld",
        "term": {"element": "h1", "attr": "class", "attr_value": "entry-title"},
        "url": "document",
    }) + "\n", encoding="utf-8")
    print("loaded rules for:", [rule.source for rule in load_rules(rules_path)])

    corpus_path = Path(scratch) / "harvested.jsonl"
    save_corpus(store, corpus_path)
    print("harvested corpus:", len(corpus_path.read_text().splitlines()), "lines")
