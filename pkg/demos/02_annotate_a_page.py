#!/usr/bin/env python3
"""Turn known concepts into links inside an HTML fragment.

Matching is longest-phrase-wins over normalized tokens, and the
annotator splices anchor tags at byte offsets, so every byte of the
original document that is not newly wrapped survives unchanged.
"""

from autolink import (
    ConceptStore,
    build_index,
    discover_mentions,
    embed_links,
    resolve,
    standoff,
)

store = ConceptStore()
for label in ["group", "fundamental groupoid", "fundamental groupoid functor"]:
    store.add_concept(
        label, [], [], "planetmath",
        "https://planetmath.org/" + label.replace(" ", ""),
    )
index = build_index(store)

page = (
    "<h1>Notes</h1>\n"
    "<p>Let $G$ be a group. The fundamental groupoid functor sends a\n"
    "space to its fundamental groupoid.</p>\n"
    "<pre>group theory cheat sheet, not linkable</pre>\n"
    "<p data-nolink>this group is opted out</p>"
)

mentions = discover_mentions(index, page)
print("mentions found:")
for m in mentions:
    print(f"  bytes {m.start}-{m.end}  {m.surface!r}  candidates={len(m.candidates)}")

# Three things to notice above: the three-word phrase won over its
# two-word prefix, nothing inside <pre> matched, and the opted-out
# paragraph stayed dark. Dollar math is skipped the same way.

resolutions = resolve(mentions, store)

# policy="first" links one occurrence per concept; "all" links every one.
linked = embed_links(page, resolutions, policy="all")
print("\nannotated page:")
print(linked)

# Stand-off records carry the same information without touching the
# document, for pipelines that post-process offsets themselves.
print("\nstand-off records:")
for record in standoff(page, resolutions):
    print(" ", record.as_record())

# Running the annotator over its own output changes nothing: already
# wrapped text sits inside an anchor, and anchors are excluded regions.
again = embed_links(linked, resolve(discover_mentions(index, linked), store), "all")
assert again == linked
print("\nsecond pass is a no-op:", again == linked)
