#!/usr/bin/env python3
"""The Linker facade: cached annotation that survives corpus edits.

A Linker bundles store, index, and result cache. Repeat requests for
the same document are served from memory; editing the corpus expires
exactly the cached documents that could be affected, keyed by the
first word of each concept phrase.
"""

from autolink import ConceptStore, Linker, ServiceConfig, create_app

store = ConceptStore()
store.add_concept("group", [], ["20A05"], "planetmath", "https://planetmath.org/group")
store.add_concept("ring", [], ["13A99"], "planetmath", "https://planetmath.org/ring")
linker = Linker(store, cache_capacity=64)

page_a = "<p>every group is a monoid</p>"
page_b = "<p>a ring has two operations</p>"

linker.annotate(page_a, doc_id="a")
linker.annotate(page_a, doc_id="a")          # served from cache
linker.annotate(page_b, doc_id="b")
print("after three requests:", linker.cache.stats())

# Adding a concept whose first word appears in page_a expires that
# entry and leaves page_b alone.
store.add_concept(
    "group action", [], ["20A05"],
    "planetmath", "https://planetmath.org/groupaction",
)
print("after adding 'group action':", linker.cache.stats())

result = linker.annotate(page_a, doc_id="a")  # recomputed, then re-cached
print("page_a now links:", [a.surface for a in result.annotations])

# Changing the document body also misses: results are keyed by a hash
# of the body plus every option that influences the output.
linker.annotate(page_a + " ", doc_id="a")
print("after editing the body:", linker.cache.stats())

# Source filtering happens inside the pipeline, not by post-filtering
# links, so restricted and unrestricted results cache independently.
only_rings = linker.annotate(page_a, sources=("mathworld",))
print("with sources=('mathworld',):", len(only_rings.annotations), "links")

# The same Linker serves HTTP. create_app returns a FastAPI app with
# POST /annotate and GET /status; run it under any ASGI server, or
# let the bundled CLI do it:
#
#   autolink serve --corpus corpus.jsonl --port 8080
#
app = create_app(linker, ServiceConfig(port=8080))
routes = sorted({getattr(r, "path", "") for r in app.routes} - {""})
print("service routes:", routes)
