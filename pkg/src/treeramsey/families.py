"""Ordered hypergraph families built from an anchored index set.

A family spec fixes a uniformity k, a ground count n and a (k-1)-subset
I of [n] containing 1.  Members have distinguished vertices x_0 (or x_I)
< x_1 < ... < x_n plus one connector vertex x_J per (k-1)-subset J of
{2..n}, each placed in the closed interval [x_0, x_1]; the edge through
J is {x_J} union {x_j : j in J}, and the special edge goes through I
with x_I = x_0.  Flavors:

  F     connectors may coincide with each other and with x_0/x_1
  G     connectors all distinct and strictly between x_I and x_1
  revF / revG   the same graphs under the reversed vertex order
  Fstar      predicate: contains both an F member and a revF member

Members are represented as ordered hypergraphs whose vertices are their
positions 1..v under the total order, with role labels attached.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Sequence

FLAVOR_F = "F"
FLAVOR_REVF = "revF"
FLAVOR_FSTAR = "Fstar"
FLAVOR_G = "G"
FLAVOR_REVG = "revG"

FLAVORS = (FLAVOR_F, FLAVOR_REVF, FLAVOR_FSTAR, FLAVOR_G, FLAVOR_REVG)
_ANCHORED_FLAVORS = (FLAVOR_F, FLAVOR_REVF, FLAVOR_FSTAR)

HYPERGRAPH_SCHEMA = "treeramsey/hypergraph/1"


def is_separated(I: Sequence[int], n: int, k: int) -> bool:
    """Whether I = {1, 2, a_3, ...} has all gaps at least n/(2k).

    Gaps are taken between consecutive elements from the second onward,
    with a virtual final element n.  Comparisons are exact (2*k*gap
    versus n), no rounding.
    """
    a = tuple(I)
    if len(a) != k - 1 or any(x >= y for x, y in zip(a, a[1:])):
        return False
    if a[0] != 1 or a[1] != 2:
        return False
    extended = a + (n,)
    return all(
        2 * k * (extended[i + 1] - extended[i]) >= n for i in range(1, k - 1)
    )


def canonical_separated(n: int, k: int) -> tuple[int, ...]:
    """Deterministic separated set {1, 2, 2+g, 2+2g, ...} with g = ceil(n/2k).

    The arithmetic progression uses the minimum legal gap, so it fails
    exactly when no separated set exists; the error names the least
    feasible n.
    """
    if k < 3:
        raise ValueError("uniformity must be >= 3")

    def attempt(m: int) -> Optional[tuple[int, ...]]:
        g = -(-m // (2 * k))
        candidate = (1, 2) + tuple(2 + i * g for i in range(1, k - 2))
        if candidate[-1] <= m and is_separated(candidate, m, k):
            return candidate
        return None

    result = attempt(n)
    if result is not None:
        return result
    m = n + 1
    while attempt(m) is None:
        m += 1
    raise ValueError(
        f"no (n,k)-separated set exists for n={n}, k={k}; minimal feasible n is {m}"
    )


def connector_sets(n: int, k: int) -> list[tuple[int, ...]]:
    """The (k-1)-subsets of {2..n}, in colex order."""
    out = []
    for last in range(k, n + 1):
        for rest in itertools.combinations(range(2, last), k - 2):
            out.append(rest + (last,))
    return out


@dataclass(frozen=True)
class FamilySpec:
    k: int
    n: int
    I: tuple[int, ...]
    flavor: str

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("uniformity must be >= 3")
        if self.n < self.k:
            raise ValueError(f"need n >= k, got n={self.n}, k={self.k}")
        I = tuple(self.I)
        object.__setattr__(self, "I", I)
        if len(I) != self.k - 1 or any(a >= b for a, b in zip(I, I[1:])):
            raise ValueError(f"I must be a sorted (k-1)-subset, got {I}")
        if 1 not in I or I[-1] > self.n:
            raise ValueError(f"I must contain 1 and lie in [n], got {I}")
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.flavor in _ANCHORED_FLAVORS and not is_separated(I, self.n, self.k):
            raise ValueError(
                f"I={I} is not (n={self.n}, k={self.k})-separated, required for "
                f"flavor {self.flavor}"
            )

    @property
    def reversed_order(self) -> bool:
        return self.flavor in (FLAVOR_REVF, FLAVOR_REVG)

    @property
    def connectors(self) -> list[tuple[int, ...]]:
        return connector_sets(self.n, self.k)

    @property
    def omega(self) -> list[tuple[int, ...]]:
        """All edge index sets: the connectors plus I, I last."""
        return self.connectors + [self.I]

    def with_flavor(self, flavor: str) -> "FamilySpec":
        return replace(self, flavor=flavor)


def role_distinguished(i: int) -> str:
    return f"x{i}"


def role_connector(J: Sequence[int]) -> str:
    return "xJ:" + ",".join(map(str, J))


ROLE_SPECIAL = "xI"


@dataclass(frozen=True)
class OrderedHypergraph:
    """k-uniform edges over vertices 1..v; the order is the position order."""

    v: int
    edges: tuple[tuple[int, ...], ...]
    labels: Optional[dict[str, int]] = None

    def __post_init__(self):
        if self.v < 1:
            raise ValueError("need at least one vertex")
        seen = set()
        for e in self.edges:
            if tuple(sorted(e)) != e or len(set(e)) != len(e):
                raise ValueError(f"edge {e} is not a sorted duplicate-free tuple")
            if e[0] < 1 or e[-1] > self.v:
                raise ValueError(f"edge {e} out of range [1, {self.v}]")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        if self.labels is not None:
            for role, pos in self.labels.items():
                if not 1 <= pos <= self.v:
                    raise ValueError(f"label {role!r} points at bad position {pos}")

    @property
    def uniformity(self) -> int:
        return len(self.edges[0]) if self.edges else 0

    @property
    def edge_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.edges)

    def to_json(self) -> dict:
        out = {
            "schema": HYPERGRAPH_SCHEMA,
            "v": self.v,
            "edges": [list(e) for e in self.edges],
        }
        if self.labels is not None:
            out["labels"] = dict(sorted(self.labels.items()))
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "OrderedHypergraph":
        allowed = {"schema", "v", "edges", "labels"}
        unknown = set(obj) - allowed
        if unknown:
            raise ValueError(f"unknown fields in hypergraph JSON: {sorted(unknown)}")
        if obj.get("schema") != HYPERGRAPH_SCHEMA:
            raise ValueError(f"expected schema {HYPERGRAPH_SCHEMA}, got {obj.get('schema')!r}")
        edges = tuple(tuple(sorted(e)) for e in obj["edges"])
        labels = obj.get("labels")
        return cls(obj["v"], edges, dict(labels) if labels is not None else None)


def reverse(H: OrderedHypergraph) -> OrderedHypergraph:
    """The same hypergraph under the reversed vertex order."""
    remap = lambda p: H.v + 1 - p
    edges = tuple(sorted(tuple(sorted(remap(p) for p in e)) for e in H.edges))
    labels = (
        {role: remap(pos) for role, pos in H.labels.items()}
        if H.labels is not None
        else None
    )
    return OrderedHypergraph(H.v, edges, labels)


def canonical_member(spec: FamilySpec) -> OrderedHypergraph:
    """The member with all connectors distinct, in colex order of J.

    Layout: anchor first, then one connector vertex per J strictly
    between the anchor and x_1, then x_1 < ... < x_n.  For F flavors the
    anchor carries both the x0 and xI roles; for G flavors it is xI.
    """
    if spec.flavor == FLAVOR_FSTAR:
        raise ValueError("Fstar is a containment predicate with no canonical member")
    connectors = spec.connectors
    q = len(connectors)
    labels: dict[str, int] = {}
    anchor = 1
    labels[ROLE_SPECIAL] = anchor
    if spec.flavor in (FLAVOR_F, FLAVOR_REVF):
        labels[role_distinguished(0)] = anchor
    pos_connector = {}
    for idx, J in enumerate(connectors):
        pos_connector[J] = 2 + idx
        labels[role_connector(J)] = 2 + idx
    pos_distinguished = {}
    for i in range(1, spec.n + 1):
        pos_distinguished[i] = q + 1 + i
        labels[role_distinguished(i)] = q + 1 + i
    v = spec.n + q + 1

    edges = [tuple(sorted({anchor} | {pos_distinguished[i] for i in spec.I}))]
    for J in connectors:
        edges.append(tuple(sorted({pos_connector[J]} | {pos_distinguished[j] for j in J})))
    member = OrderedHypergraph(v, tuple(sorted(edges)), labels)
    if spec.reversed_order:
        member = reverse(member)
    return member


def is_member(H: OrderedHypergraph, spec: FamilySpec) -> bool:
    """Whether the labeled ordered hypergraph realizes some member of the family.

    F flavors allow connector collisions and collapses onto the anchor
    or x_1; G flavors demand distinct connectors strictly inside the
    open interval.  The edge set must match the role structure exactly.
    """
    if spec.flavor == FLAVOR_FSTAR:
        raise ValueError("Fstar is a containment predicate; use contains_fstar")
    if spec.reversed_order:
        return is_member(reverse(H), spec.with_flavor(
            FLAVOR_F if spec.flavor == FLAVOR_REVF else FLAVOR_G
        ))
    if H.labels is None:
        raise ValueError("member check requires role labels")

    labels = H.labels
    anchor_role = role_distinguished(0) if spec.flavor == FLAVOR_F else ROLE_SPECIAL
    needed = [anchor_role] + [role_distinguished(i) for i in range(1, spec.n + 1)]
    needed += [role_connector(J) for J in spec.connectors]
    for role in needed:
        if role not in labels:
            raise ValueError(f"missing label {role!r}")
    anchor = labels[anchor_role]
    distinguished = [labels[role_distinguished(i)] for i in range(1, spec.n + 1)]
    connector_pos = {J: labels[role_connector(J)] for J in spec.connectors}
    if spec.flavor == FLAVOR_F and labels.get(ROLE_SPECIAL, anchor) != anchor:
        return False  # the special connector must sit on the anchor

    chain = [anchor] + distinguished
    if any(a >= b for a, b in zip(chain, chain[1:])):
        return False
    x1 = distinguished[0]
    if spec.flavor == FLAVOR_F:
        if any(not anchor <= p <= x1 for p in connector_pos.values()):
            return False
    else:  # G: distinct, strictly between
        positions = list(connector_pos.values())
        if len(set(positions)) != len(positions):
            return False
        if any(not anchor < p < x1 for p in positions):
            return False

    used = set(chain) | set(connector_pos.values())
    if used != set(range(1, H.v + 1)):
        return False

    pos_of = {i: p for i, p in zip(range(1, spec.n + 1), distinguished)}
    expected = {tuple(sorted({anchor} | {pos_of[i] for i in spec.I}))}
    for J in spec.connectors:
        expected.add(tuple(sorted({connector_pos[J]} | {pos_of[j] for j in J})))
    return H.edge_set == frozenset(expected)


def contains_fstar(H: OrderedHypergraph, spec: FamilySpec) -> bool:
    """Whether H contains an F member and a revF member as ordered subgraphs."""
    from .search import contains_family_member

    base = spec.with_flavor(FLAVOR_F)
    return contains_family_member(H, base) and contains_family_member(
        H, base.with_flavor(FLAVOR_REVF)
    )


# Placement of a connector class: collapse onto the anchor, collapse onto
# x_1, or a dedicated vertex in one of the ordered interior slots.
PLACE_ANCHOR = "anchor"
PLACE_X1 = "x1"


@dataclass(frozen=True)
class MemberBlueprint:
    """The data distinguishing one F-flavor member from another.

    classes partitions the connector index sets; each class is placed
    either on the anchor, on x_1, or at an interior slot (an integer;
    slots are ordered left to right between the anchor and x_1).  Since
    everything collapsed onto the same special vertex is one class, at
    most one class sits on the anchor and one on x_1; this makes the
    blueprint-to-member map injective.
    """

    spec: FamilySpec
    classes: tuple[tuple[tuple[int, ...], ...], ...]
    placements: tuple[object, ...]

    def __post_init__(self):
        flat = [J for cls in self.classes for J in cls]
        if sorted(flat) != sorted(self.spec.connectors):
            raise ValueError("classes must partition the connector sets")
        if len(self.placements) != len(self.classes):
            raise ValueError("one placement per class")
        for special in (PLACE_ANCHOR, PLACE_X1):
            if sum(1 for p in self.placements if p == special) > 1:
                raise ValueError(f"at most one class may collapse onto {special}")
        slots = [p for p in self.placements if isinstance(p, int)]
        if sorted(slots) != list(range(len(slots))):
            raise ValueError("interior slots must be 0..b-1, each used once")


def realize_blueprint(bp: MemberBlueprint) -> OrderedHypergraph:
    """Build the ordered hypergraph a blueprint describes, labels included."""
    spec = bp.spec
    interior = sum(1 for p in bp.placements if isinstance(p, int))
    anchor = 1
    x1 = anchor + interior + 1
    v = spec.n + interior + 1

    labels = {ROLE_SPECIAL: anchor, role_distinguished(0): anchor}
    pos_of = {}
    for i in range(1, spec.n + 1):
        pos_of[i] = x1 + (i - 1)
        labels[role_distinguished(i)] = pos_of[i]
    for cls, place in zip(bp.classes, bp.placements):
        if place == PLACE_ANCHOR:
            pos = anchor
        elif place == PLACE_X1:
            pos = x1
        else:
            pos = anchor + 1 + place
        for J in cls:
            labels[role_connector(J)] = pos

    edges = {tuple(sorted({anchor} | {pos_of[i] for i in spec.I}))}
    for cls, place in zip(bp.classes, bp.placements):
        pos = labels[role_connector(cls[0])]
        for J in cls:
            edges.add(tuple(sorted({pos} | {pos_of[j] for j in J})))
    member = OrderedHypergraph(v, tuple(sorted(edges)), labels)
    if spec.reversed_order:
        member = reverse(member)
    return member


def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1 :]
        yield [[first]] + partition


def enumerate_blueprints(spec: FamilySpec) -> Iterator[MemberBlueprint]:
    """All canonical blueprints: one per distinct member of the family.

    Chooses the (possibly empty) groups collapsed onto the anchor and
    onto x_1, partitions the rest, and linearly orders those classes in
    the interior.  Feasible for small n only; bijectivity with distinct
    members is cross-checked against a direct enumeration in tests.
    """
    connectors = spec.connectors
    q = len(connectors)
    for anchor_mask in range(1 << q):
        anchor_class = tuple(
            J for i, J in enumerate(connectors) if anchor_mask >> i & 1
        )
        rest_after_anchor = [
            J for i, J in enumerate(connectors) if not anchor_mask >> i & 1
        ]
        r = len(rest_after_anchor)
        for x1_mask in range(1 << r):
            x1_class = tuple(
                J for i, J in enumerate(rest_after_anchor) if x1_mask >> i & 1
            )
            interior_pool = [
                J for i, J in enumerate(rest_after_anchor) if not x1_mask >> i & 1
            ]
            for partition in _set_partitions(interior_pool):
                interior_classes = tuple(tuple(sorted(cls)) for cls in partition)
                for order in itertools.permutations(range(len(interior_classes))):
                    classes: list[tuple[tuple[int, ...], ...]] = []
                    placements: list[object] = []
                    if anchor_class:
                        classes.append(anchor_class)
                        placements.append(PLACE_ANCHOR)
                    if x1_class:
                        classes.append(x1_class)
                        placements.append(PLACE_X1)
                    classes.extend(interior_classes)
                    placements.extend(order)
                    yield MemberBlueprint(spec, tuple(classes), tuple(placements))


def hypergraph_to_text(H: OrderedHypergraph) -> str:
    return json.dumps(H.to_json(), sort_keys=True, indent=2) + "\n"


def read_hypergraph(path) -> OrderedHypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return OrderedHypergraph.from_json(json.load(fh))


def write_hypergraph(H: OrderedHypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(hypergraph_to_text(H))


def member_vertex_count(spec: FamilySpec) -> int:
    """Closed form n + C(n-1, k-1) + 1 for all-distinct members."""
    return spec.n + math.comb(spec.n - 1, spec.k - 1) + 1


def member_edge_count(spec: FamilySpec) -> int:
    """Closed form C(n-1, k-1) + 1."""
    return math.comb(spec.n - 1, spec.k - 1) + 1
