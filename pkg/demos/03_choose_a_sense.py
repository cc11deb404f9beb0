#!/usr/bin/env python3
"""Pick the right sense of an ambiguous term from its neighbours.

"entanglement" means one thing in quantum information (81P40) and
another in graph theory (05C83). When a page also mentions plainly
graph-theoretic concepts, those unambiguous neighbours act as anchors
and the candidate whose classification codes sit closest to them wins.
"""

from autolink import (
    ConceptStore,
    MscCode,
    build_index,
    discover_mentions,
    msc_distance,
    resolve,
)

store = ConceptStore()
store.add_concept("graph", [], ["05C10"], "planetmath", "https://planetmath.org/graph")
store.add_concept("vertex", [], ["05C99"], "planetmath", "https://planetmath.org/vertex")
store.add_concept(
    "entanglement", [], ["81P40"],
    "planetmath", "https://planetmath.org/entanglement",
)
store.add_concept(
    "entanglement", [], ["05C83"],
    "mathworld", "https://mathworld.wolfram.com/GraphEntanglement.html",
)
index = build_index(store)

# Distance between codes is hierarchical: 0 same code, 1 same first
# three characters, 2 same first two, 3 otherwise.
graph_code = MscCode.parse("05C10")
print("d(05C83, 05C10) =", msc_distance(MscCode.parse("05C83"), graph_code))
print("d(81P40, 05C10) =", msc_distance(MscCode.parse("81P40"), graph_code))

page = "the graph has a vertex with entanglement"
resolutions = resolve(discover_mentions(index, page), store)

for r in resolutions:
    c = r.concept
    print(f"{r.mention.surface!r}: {c.source} {c.msc[0].code}  method={r.method}  score={r.score}")

winner = [r for r in resolutions if r.mention.surface == "entanglement"][0]
assert winner.concept.msc[0].code == "05C83"

# With no anchors at all there is nothing to cluster against, so the
# resolver falls back to the configured source order.
lonely = resolve(discover_mentions(index, "entanglement"), store)[0]
print("\nno context:", lonely.concept.source, "wins, method =", lonely.method)

# Ties on distance are also settled by source order. Both senses of
# "equivalence" below sit one step from the anchor, and planetmath
# outranks mathworld by default.
tiebreak = ConceptStore()
tiebreak.add_concept("logic", [], ["03B05"], "planetmath", "https://planetmath.org/logic")
tiebreak.add_concept("equivalence", [], ["03B10"], "planetmath", "https://planetmath.org/eq")
tiebreak.add_concept("equivalence", [], ["03B20"], "mathworld", "https://mathworld.wolfram.com/eq")
tied = resolve(
    discover_mentions(build_index(tiebreak), "logic and equivalence"), tiebreak
)
choice = [r for r in tied if r.mention.surface == "equivalence"][0]
print("tied scores:", choice.concept.source, "wins, score =", choice.score)
