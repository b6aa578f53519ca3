"""Separated sets, member generation/recognition, blueprints, IO."""

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treeramsey import (
    FLAVOR_F,
    FLAVOR_FSTAR,
    FLAVOR_G,
    FLAVOR_REVF,
    FLAVOR_REVG,
    FamilySpec,
    MemberBlueprint,
    OrderedHypergraph,
    canonical_member,
    canonical_separated,
    contains_fstar,
    enumerate_blueprints,
    is_member,
    is_separated,
    member_edge_count,
    member_vertex_count,
    realize_blueprint,
    reverse,
)
from treeramsey.families import (
    PLACE_ANCHOR,
    PLACE_X1,
    ROLE_SPECIAL,
    connector_sets,
    role_connector,
    role_distinguished,
)
from treeramsey.steiner import is_partial_steiner


class TestSeparated:
    def test_uniformity_three_unique(self):
        for n in (3, 10, 100):
            assert is_separated((1, 2), n, 3)
            assert not is_separated((1, 3), n, 3)

    def test_examples(self):
        assert is_separated((1, 2, 8), 24, 4)
        assert not is_separated((1, 3, 9), 24, 4)

    def test_matches_exhaustive_definition(self):
        # brute force straight from the gap condition
        for n in range(4, 16):
            for k in (4, 5):
                if k - 1 > n:
                    continue
                for I in itertools.combinations(range(1, n + 1), k - 1):
                    ext = I + (n,)
                    expected = (
                        I[0] == 1
                        and I[1] == 2
                        and all(
                            2 * k * (ext[i + 1] - ext[i]) >= n
                            for i in range(1, k - 1)
                        )
                    )
                    assert is_separated(I, n, k) == expected

    def test_canonical_examples(self):
        assert canonical_separated(24, 4) == (1, 2, 5)
        assert canonical_separated(100, 3) == (1, 2)

    def test_canonical_always_separated(self):
        for k in (3, 4, 5):
            for n in range(k, 40):
                try:
                    I = canonical_separated(n, k)
                except ValueError:
                    continue
                assert is_separated(I, n, k)
                assert I[-1] <= n

    def test_canonical_minimal_gap_set(self):
        # the progression gap is the least integer allowed, so existence of
        # any separated set implies the formula works; cross-check brutally
        for k in (4, 5):
            for n in range(k, 20):
                exists = any(
                    is_separated(I, n, k)
                    for I in itertools.combinations(range(1, n + 1), k - 1)
                )
                try:
                    canonical_separated(n, k)
                    assert exists
                except ValueError:
                    assert not exists

    def test_infeasible_names_minimal(self):
        with pytest.raises(ValueError, match="minimal feasible n is 5"):
            canonical_separated(4, 5)


def spec334(flavor=FLAVOR_F):
    return FamilySpec(3, 3, (1, 2), flavor)


class TestFamilySpec:
    def test_anchored_flavors_require_separated(self):
        with pytest.raises(ValueError, match="separated"):
            FamilySpec(3, 4, (1, 3), FLAVOR_F)
        with pytest.raises(ValueError, match="separated"):
            # gap 3 - 2 = 1 below 16/8 = 2
            FamilySpec(4, 16, (1, 2, 3), FLAVOR_REVF)
        FamilySpec(4, 8, (1, 2, 4), FLAVOR_F)

    def test_g_flavor_only_needs_one(self):
        FamilySpec(4, 5, (1, 2, 4), FLAVOR_G)
        with pytest.raises(ValueError, match="contain 1"):
            FamilySpec(4, 5, (2, 3, 4), FLAVOR_G)

    def test_shape_validation(self):
        with pytest.raises(ValueError, match="sorted"):
            FamilySpec(3, 4, (2, 1), FLAVOR_G)
        with pytest.raises(ValueError, match="n >= k"):
            FamilySpec(4, 3, (1, 2, 3), FLAVOR_G)


class TestCanonicalMember:
    def test_counts_example_g(self):
        member = canonical_member(FamilySpec(3, 4, (1, 2), FLAVOR_G))
        assert member.v == 8 and len(member.edges) == 4

    def test_counts_example_f(self):
        member = canonical_member(FamilySpec(3, 4, (1, 2), FLAVOR_F))
        assert member.v == 8 and len(member.edges) == 4

    def test_counts_example_k4(self):
        member = canonical_member(FamilySpec(4, 5, (1, 2, 4), FLAVOR_G))
        omega_size = len(connector_sets(5, 4)) + 1
        assert len(member.edges) == omega_size == 5

    def test_closed_forms(self):
        for k in (3, 4, 5):
            for n in range(k, 9):
                spec = FamilySpec(k, n, tuple(range(1, k)), FLAVOR_G)
                member = canonical_member(spec)
                assert member.v == member_vertex_count(spec)
                assert len(member.edges) == member_edge_count(spec)

    def test_generator_output_validates(self):
        for flavor in (FLAVOR_F, FLAVOR_REVF, FLAVOR_G, FLAVOR_REVG):
            spec = FamilySpec(3, 4, (1, 2), flavor)
            assert is_member(canonical_member(spec), spec)

    def test_members_are_partial_systems(self):
        for k in (3, 4):
            for n in range(k, 7):
                for flavor in (FLAVOR_F, FLAVOR_G):
                    spec = FamilySpec(k, n, tuple(range(1, k)), flavor)
                    assert is_partial_steiner(canonical_member(spec), k - 1) is None

    def test_g_contained_in_f(self):
        # a G member is an F member once the anchor also carries the x0 role
        g_member = canonical_member(FamilySpec(3, 4, (1, 2), FLAVOR_G))
        labels = dict(g_member.labels)
        labels[role_distinguished(0)] = labels[ROLE_SPECIAL]
        as_f = OrderedHypergraph(g_member.v, g_member.edges, labels)
        assert is_member(as_f, FamilySpec(3, 4, (1, 2), FLAVOR_F))

    def test_fstar_has_no_canonical_member(self):
        with pytest.raises(ValueError, match="no canonical member"):
            canonical_member(FamilySpec(3, 4, (1, 2), FLAVOR_FSTAR))


class TestIsMember:
    def test_edge_deletion_detected(self):
        spec = FamilySpec(3, 4, (1, 2), FLAVOR_F)
        member = canonical_member(spec)
        trimmed = OrderedHypergraph(member.v, member.edges[1:], member.labels)
        assert not is_member(trimmed, spec)

    def test_all_connectors_collapsed_on_anchor(self):
        spec = spec334()
        bp = MemberBlueprint(spec, (tuple(spec.connectors),), (PLACE_ANCHOR,))
        collapsed = realize_blueprint(bp)
        assert collapsed.v == spec.n + 1
        assert is_member(collapsed, spec)

    def test_collapse_on_x1(self):
        spec = spec334()
        bp = MemberBlueprint(spec, (tuple(spec.connectors),), (PLACE_X1,))
        assert is_member(realize_blueprint(bp), spec)

    def test_g_rejects_collapses(self):
        spec = spec334(FLAVOR_G)
        f_spec = spec334(FLAVOR_F)
        bp = MemberBlueprint(f_spec, (tuple(f_spec.connectors),), (PLACE_ANCHOR,))
        collapsed = realize_blueprint(bp)
        assert not is_member(collapsed, spec)

    def test_missing_labels_raise(self):
        spec = spec334()
        member = canonical_member(spec)
        with pytest.raises(ValueError, match="requires role labels"):
            is_member(OrderedHypergraph(member.v, member.edges), spec)
        broken = dict(member.labels)
        del broken[role_connector((2, 3))]
        with pytest.raises(ValueError, match="missing label"):
            is_member(OrderedHypergraph(member.v, member.edges, broken), spec)

    def test_reverse_of_canonical_is_rev_member(self):
        spec = FamilySpec(3, 4, (1, 2), FLAVOR_F)
        member = canonical_member(spec)
        assert is_member(reverse(member), spec.with_flavor(FLAVOR_REVF))


class TestReverse:
    def test_symmetric_single_edge(self):
        H = OrderedHypergraph(3, ((1, 2, 3),))
        assert reverse(H).edges == ((1, 2, 3),)

    @settings(max_examples=150)
    @given(st.data())
    def test_involution(self, data):
        v = data.draw(st.integers(3, 9))
        k = data.draw(st.integers(2, min(v, 4)))
        pool = list(itertools.combinations(range(1, v + 1), k))
        edges = tuple(
            sorted(
                data.draw(
                    st.sets(st.sampled_from(pool), min_size=1, max_size=min(len(pool), 6))
                )
            )
        )
        H = OrderedHypergraph(v, edges)
        assert reverse(reverse(H)) == H


def brute_force_members(spec: FamilySpec) -> set:
    """Independent member enumeration: try every map from connector sets
    to {anchor, x1, slot_1..slot_q} and dedupe the resulting edge sets."""
    connectors = spec.connectors
    q = len(connectors)
    seen = set()
    for assignment in itertools.product(range(q + 2), repeat=q):
        slots = sorted(set(a for a in assignment if a >= 2))
        interior = len(slots)
        anchor = 1
        x1 = anchor + interior + 1
        pos_of = {i: x1 + (i - 1) for i in range(1, spec.n + 1)}
        slot_pos = {s: anchor + 1 + slots.index(s) for s in slots}
        edges = {tuple(sorted({anchor} | {pos_of[i] for i in spec.I}))}
        for J, a in zip(connectors, assignment):
            if a == 0:
                p = anchor
            elif a == 1:
                p = x1
            else:
                p = slot_pos[a]
            edges.add(tuple(sorted({p} | {pos_of[j] for j in J})))
        seen.add((anchor + interior + spec.n, tuple(sorted(edges))))
    return seen


class TestBlueprints:
    @pytest.mark.parametrize("n,expected", [(3, 3), (4, 51)])
    def test_enumeration_matches_brute_force(self, n, expected):
        spec = FamilySpec(3, n, (1, 2), FLAVOR_F)
        blueprints = list(enumerate_blueprints(spec))
        realized = {
            (m.v, m.edges) for m in map(realize_blueprint, blueprints)
        }
        assert len(realized) == len(blueprints)  # blueprint <-> member bijection
        assert realized == brute_force_members(spec)
        assert len(realized) == expected

    def test_realizations_validate(self):
        spec = spec334()
        for bp in enumerate_blueprints(spec):
            assert is_member(realize_blueprint(bp), spec)

    def test_partition_enforced(self):
        spec = spec334()
        with pytest.raises(ValueError, match="partition"):
            MemberBlueprint(spec, (((2, 3),), ((2, 3),)), (PLACE_ANCHOR, PLACE_X1))


class TestFstar:
    def test_complete_graph_contains_both(self):
        spec = spec334(FLAVOR_FSTAR)
        v = 6
        edges = tuple(itertools.combinations(range(1, v + 1), 3))
        host = OrderedHypergraph(v, edges)
        assert contains_fstar(host, spec)

    def test_too_small_host(self):
        spec = spec334(FLAVOR_FSTAR)
        host = OrderedHypergraph(3, ((1, 2, 3),))
        assert not contains_fstar(host, spec)


class TestHypergraphIO:
    def test_round_trip(self):
        member = canonical_member(FamilySpec(3, 4, (1, 2), FLAVOR_G))
        again = OrderedHypergraph.from_json(
            json.loads(json.dumps(member.to_json()))
        )
        assert again == member

    def test_unknown_field_rejected(self):
        obj = canonical_member(spec334()).to_json()
        obj["extra"] = 1
        with pytest.raises(ValueError, match="unknown fields"):
            OrderedHypergraph.from_json(obj)

    def test_edge_validation(self):
        with pytest.raises(ValueError, match="duplicate edge"):
            OrderedHypergraph(4, ((1, 2, 3), (1, 2, 3)))
        with pytest.raises(ValueError, match="out of range"):
            OrderedHypergraph(3, ((1, 2, 4),))
