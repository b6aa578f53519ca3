# The avoidance search: does a stepped coloring contain a monochromatic
# ordered family copy?
#
# A triangle-free base keeps the stepped coloring clean in colors 0 and
# 1 for the forward flavor and in 2 and 3 for the reversed one.  The
# all-zero base is the negative control: every falling-level comb is
# color 0, so copies abound and the search returns the least one.

import json

from treeramsey import (
    FLAVOR_F,
    BaseColoring,
    BINARY,
    FamilySpec,
    build_tower,
    find_mono_f_copy,
    validate_witness,
    verify_stepup_avoidance,
)

cycle = {(1, 2), (2, 3), (3, 4), (1, 4)}
c4 = BaseColoring.from_function(
    2, 4, BINARY, lambda s: 0 if tuple(sorted(s)) in cycle else 1
)
chi = build_tower(c4, 3).top
spec = FamilySpec(3, 4, (1, 2), FLAVOR_F)

report = verify_stepup_avoidance(chi, spec)
print("triangle-free base on [16]:")
for slot in report.slots:
    print(f"  flavor {slot.flavor} color {slot.color}: {slot.status}"
          f"  (nodes {slot.counters.nodes}, prunes {slot.counters.prunes})")
print("overall:", report.status)

# Negative control: the all-zero base.
all_zero = BaseColoring(2, 4, BINARY, (0,) * 6)
chi0 = build_tower(all_zero, 3).top
outcome = find_mono_f_copy(chi0, spec, {0})
w = outcome.witness
print(f"\nall-zero base: {outcome.status}")
print("  chain:", w.distinguished)
print("  connector choices:", {",".join(map(str, J)): v for J, v in w.assignment})
print("  edges:", w.edges(spec.I))
print("  re-check passes:", validate_witness(chi0, spec, w))
print(json.dumps(w.to_json(), indent=2, sort_keys=True))
