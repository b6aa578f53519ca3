# Random orderings of the blow-up, searched for ordered family copies.
#
# At the intended class size (n**(k+3)) a uniformly random vertex order
# contains a family copy with overwhelming probability.  At toy class
# size the effect is visible but far from certain, which is exactly
# what the seeded experiment below quantifies; failing orderings are
# kept verbatim so a miss can be replayed.

from treeramsey import (
    FLAVOR_G,
    FamilySpec,
    build_blowup,
    canonical_member,
    find_ordered_copy,
    ordering_as_hypergraph,
    sample_ordering_and_search,
)

system = build_blowup(3, 3, (1, 2), m=2)
spec = FamilySpec(3, 3, (1, 2), FLAVOR_G)

report = sample_ordering_and_search(system, spec, trials=50, seed=2026)
for flavor in ("G", "revG"):
    print(f"flavor {flavor}: found in {report.found[flavor]}/50 orderings "
          f"({report.found_fraction(flavor):.2f})")

if report.failures:
    failure = report.failures[0]
    print(f"\nfirst miss: trial {failure['trial']}, flavor {failure['flavor']}")
    host = ordering_as_hypergraph(system, failure["ordering"])
    target = canonical_member(spec.with_flavor(failure["flavor"]))
    print("replay still misses:", find_ordered_copy(host, target) is None)

# Larger classes raise the hit rate quickly.
for m in (2, 3, 4):
    bigger = build_blowup(3, 3, (1, 2), m=m)
    rep = sample_ordering_and_search(bigger, spec, trials=30, seed=1)
    print(f"m={m}: G-copy hit rate {rep.found_fraction('G'):.2f}")
