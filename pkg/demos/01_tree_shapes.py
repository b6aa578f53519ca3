# Leaf arithmetic on the complete binary tree.
#
# A tree of depth N has leaves 1..2**N in left-to-right order; the root
# sits at level 1 and the leaves at level N+1.  Everything downstream
# (coloring rules, the avoidance search) reduces to one primitive: the
# level at which two leaves meet.

from treeramsey import (
    LeafSet,
    TreeParams,
    ancestor_level,
    classify,
    consecutive_levels,
    projection,
    split_parts,
)

params = TreeParams(4)
print(f"depth {params.depth}, leaves 1..{params.num_leaves}")

# Adjacent leaves meet deep, distant leaves meet shallow.
for x, y in [(1, 2), (1, 3), (1, 9), (8, 9)]:
    print(f"  leaves {x:2d},{y:2d} meet at level {ancestor_level(x, y, params)}")

# A set of leaves is classified by the run of its consecutive meeting
# levels: strictly falling = left comb, strictly rising = right comb,
# anything else splits at its top ancestor.
for elements in [(1, 2, 4, 8), (9, 13, 15, 16), (1, 2, 9, 10), (2, 3, 4, 16)]:
    X = LeafSet.of(elements, params)
    shape = classify(X)
    print(
        f"  {str(elements):>16}  levels {consecutive_levels(X)}  ->  "
        f"{shape.kind.value} ({shape.left_count},{shape.right_count})"
    )

# The projection drops a set one tree level down: it collects the
# meeting levels of consecutive pairs.  For a comb of size t the
# projection keeps all t-1 values, which is what lets a coloring of
# (k-1)-subsets of levels drive a coloring of k-subsets of leaves.
comb = LeafSet.of((1, 2, 4, 8), params)
print("projection of the left comb:", projection(comb))

# Splits partition at the ancestor of the extremes; the left part
# always finishes before the right part starts.
left, right = split_parts(LeafSet.of((1, 2, 9, 10), params))
print("split parts:", left.elements, "|", right.elements)
