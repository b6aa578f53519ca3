# From a coloring of pairs to a 4-coloring of triples, and upward.
#
# A binary coloring of the pairs of [N] lifts to a 4-coloring of the
# triples of [2**N]: a triple is always a comb, and it takes the inner
# color of its projection (left comb) or 3 minus it (right comb).
# From uniformity 4 on, non-combs exist and are colored by split type.

from treeramsey import (
    BINARY,
    BaseColoring,
    TreeParams,
    build_tower,
    export_coloring,
    reflect_set,
    verify_no_mono_clique,
)

# The 4-cycle with its two diagonals: color 0 on the cycle, 1 on the
# diagonals.  Neither color class contains a triangle.
cycle = {(1, 2), (2, 3), (3, 4), (1, 4)}
base = BaseColoring.from_function(
    2, 4, BINARY, lambda s: 0 if tuple(sorted(s)) in cycle else 1
)
print(export_coloring(base), end="")
print("monochromatic triangle:", verify_no_mono_clique(base, 3))

tower = build_tower(base, 3)
chi = tower.top
print(f"\nstepped coloring: uniformity {chi.uniformity} on [{chi.ground_size}]")
for X in [(1, 2, 3), (1, 3, 4), (2, 11, 16), (1, 8, 9)]:
    print(f"  chi{X} = {chi.color_of(X)}")

# Reversing the leaf order swaps left and right combs but keeps the
# projection, so colors flip to their complement in every triple.
params = TreeParams(4)
X = (2, 11, 16)
print(
    f"reflection: chi{X} + chi{reflect_set(X, params)} = "
    f"{chi.color_of(X) + chi.color_of(reflect_set(X, params))} (always 3)"
)

# Towers iterate the construction; ground sizes explode accordingly.
tower4 = build_tower(base, 4)
print("tower grounds:", [lvl.ground_size for lvl in tower4.levels])
top = tower4.top
print("a 4-set color at the top:", top.color_of((1, 2, 40000, 50000)))
