# The ordered hypergraph families under test.
#
# A spec (k, n, I) describes graphs with a chain x_0 < x_1 < ... < x_n
# and one connector vertex per (k-1)-subset J of {2..n}, each placed in
# [x_0, x_1]; the edge through J is the connector plus {x_j : j in J},
# and a special edge goes through I with its connector pinned to x_0.

from treeramsey import (
    FLAVOR_F,
    FLAVOR_G,
    FLAVOR_REVF,
    FamilySpec,
    canonical_member,
    canonical_separated,
    enumerate_blueprints,
    is_member,
    is_separated,
    realize_blueprint,
    reverse,
)

spec = FamilySpec(3, 4, (1, 2), FLAVOR_G)
member = canonical_member(spec)
print(f"canonical member for k=3, n=4: {member.v} vertices, {len(member.edges)} edges")
for edge in member.edges:
    print("  edge", edge)
print("roles:", {role: pos for role, pos in sorted(member.labels.items())})

# Recognition is label-driven and exact on the edge set.
print("validates:", is_member(member, spec))
print("reversed member validates as the reversed flavor:",
      is_member(reverse(canonical_member(spec.with_flavor(FLAVOR_F))),
                spec.with_flavor(FLAVOR_REVF)))

# The loose flavor allows connector collisions and collapses onto the
# interval ends; members are enumerable at toy scale through blueprints.
f_spec = FamilySpec(3, 4, (1, 2), FLAVOR_F)
blueprints = list(enumerate_blueprints(f_spec))
print(f"\ndistinct members for k=3, n=4: {len(blueprints)}")
smallest = min(realize_blueprint(bp).v for bp in blueprints)
largest = max(realize_blueprint(bp).v for bp in blueprints)
print(f"vertex counts range from {smallest} (everything collapsed) to {largest}")

# Separated index sets space out I so large combs fit between anchors.
print("\nseparated checks:")
for I, n, k in [((1, 2), 30, 3), ((1, 2, 8), 24, 4), ((1, 3, 9), 24, 4)]:
    print(f"  I={I}, n={n}, k={k}: {is_separated(I, n, k)}")
print("canonical separated set for n=24, k=4:", canonical_separated(24, 4))
