"""Blow-ups, planes, gluing, Steiner validation, and the ordering experiment."""

import itertools
import math
import random

import pytest

from treeramsey import (
    FamilySpec,
    SteinerWitness,
    assemble_h,
    build_blowup,
    build_projective_plane,
    is_partial_steiner,
    next_prime_at_least,
    ordering_as_hypergraph,
    sample_ordering_and_search,
    validate_projective_plane,
)
from treeramsey.families import FLAVOR_G
from treeramsey.steiner import _shuffled


def toy_blowup():
    return build_blowup(3, 3, (1, 2), m=2)


class TestBlowup:
    def test_toy_counts(self):
        system = toy_blowup()
        assert system.vertex_count == 14
        assert system.edge_count == 8
        assert len(list(system.iter_edges())) == 8

    def test_default_class_size(self):
        assert build_blowup(3, 3, (1, 2)).m == 3**6

    def test_count_formulas(self):
        for k in (3, 4):
            for n in range(k, 6):
                for m in (1, 2, 3):
                    system = build_blowup(n, k, tuple(range(1, k)), m)
                    q = math.comb(n - 1, k - 1)
                    assert system.vertex_count == m * n + m ** (k - 1) * (q + 1)
                    edges = list(system.iter_edges())
                    assert len(edges) == m ** (k - 1) * (q + 1)
                    assert len(set(edges)) == len(edges)

    def test_unique_extension(self):
        system = toy_blowup()
        for J in system.omega:
            images = []
            for z in itertools.product(*(system.class_range(j) for j in J)):
                v = system.extend_transversal(J, z)
                assert v in system.block_range(J)
                assert tuple(sorted(z + (v,))) in set(system.iter_edges())
                images.append(v)
            # injective and covering: a bijection onto the block
            assert sorted(images) == list(system.block_range(J))

    def test_extension_changes_with_coordinates(self):
        system = toy_blowup()
        a = system.extend_transversal((2, 3), (3, 5))
        b = system.extend_transversal((2, 3), (4, 5))
        assert a != b

    def test_wrong_class_rejected(self):
        system = toy_blowup()
        with pytest.raises(ValueError, match="not in class"):
            system.extend_transversal((2, 3), (1, 5))
        with pytest.raises(ValueError, match="not an edge index set"):
            system.extend_transversal((1, 3), (1, 5))

    def test_parameter_validation(self):
        with pytest.raises(ValueError, match="n >= k"):
            build_blowup(2, 3, (1, 2), 1)
        with pytest.raises(ValueError, match="contain 1"):
            build_blowup(3, 3, (2, 3), 1)


class TestPrimes:
    @pytest.mark.parametrize("n,p", [(22, 23), (7, 7), (2, 2), (14, 17), (20, 23)])
    def test_next_prime(self, n, p):
        assert next_prime_at_least(n) == p

    def test_lower_bound(self):
        with pytest.raises(ValueError):
            next_prime_at_least(1)


class TestPlane:
    def test_fano(self):
        plane = build_projective_plane(2)
        assert plane.num_points == 7
        assert len(plane.lines) == 7
        assert all(len(line) == 3 for line in plane.lines)
        validate_projective_plane(plane)

    def test_order_three(self):
        plane = build_projective_plane(3)
        assert plane.num_points == 13
        assert all(len(line) == 4 for line in plane.lines)
        validate_projective_plane(plane)

    @pytest.mark.parametrize("p", [5, 7])
    def test_axioms(self, p):
        validate_projective_plane(build_projective_plane(p))

    @pytest.mark.parametrize("bad", [4, 6, 8, 9, 1])
    def test_non_primes_rejected(self, bad):
        with pytest.raises(ValueError, match="unsupported order|prime"):
            build_projective_plane(bad)


class TestPartialSteiner:
    def test_complete_quadruple_witness(self):
        edges = list(itertools.combinations((1, 2, 3, 4), 3))
        assert is_partial_steiner(edges, 2) == SteinerWitness(
            (1, 2, 3), (1, 2, 4), (1, 2)
        )

    def test_toy_blowup_clean(self):
        assert is_partial_steiner(toy_blowup(), 2) is None

    def test_single_edge_clean(self):
        assert is_partial_steiner([(1, 2, 3)], 2) is None

    def test_ell_bound(self):
        with pytest.raises(ValueError, match="below the uniformity"):
            is_partial_steiner([(1, 2, 3)], 3)

    def test_relabeling_invariance(self):
        system = toy_blowup()
        rng = random.Random(3)
        ordering = _shuffled(list(range(1, system.vertex_count + 1)), rng)
        shuffled = ordering_as_hypergraph(system, ordering)
        assert is_partial_steiner(shuffled, 2) is None


class TestAssembly:
    def test_toy_gluing(self):
        system = toy_blowup()
        p = next_prime_at_least(system.vertex_count)
        assert p == 17
        plane = build_projective_plane(p)
        glued = assemble_h(system, plane, seed=0)
        assert glued.v == p * p + p + 1 == 307
        # two lines share one point, so no cross-line edge collisions
        assert len(glued.edges) == len(plane.lines) * system.edge_count
        assert is_partial_steiner(glued, 2) is None

    def test_seed_changes_layout_not_validity(self):
        system = toy_blowup()
        plane = build_projective_plane(17)
        a = assemble_h(system, plane, seed=1)
        b = assemble_h(system, plane, seed=2)
        assert a.edges != b.edges
        assert assemble_h(system, plane, seed=1).edges == a.edges
        assert is_partial_steiner(b, 2) is None

    def test_provenance_tracks_lines(self):
        system = toy_blowup()
        plane = build_projective_plane(17)
        glued = assemble_h(system, plane, seed=0)
        lines_seen = set()
        for edge, sources in glued.provenance.items():
            for line_id, source in sources:
                lines_seen.add(line_id)
                assert tuple(sorted(source)) in set(system.iter_edges())
                assert set(edge) <= set(plane.lines[line_id])
        assert lines_seen == set(range(len(plane.lines)))

    def test_plane_too_small(self):
        system = toy_blowup()
        with pytest.raises(ValueError, match="too small"):
            assemble_h(system, build_projective_plane(13), seed=0)


class TestOrderingExperiment:
    def test_rejects_zero_trials(self):
        spec = FamilySpec(3, 3, (1, 2), FLAVOR_G)
        with pytest.raises(ValueError, match="at least one trial"):
            sample_ordering_and_search(toy_blowup(), spec, 0, 0)

    def test_spec_mismatch(self):
        spec = FamilySpec(3, 4, (1, 2), FLAVOR_G)
        with pytest.raises(ValueError, match="class count"):
            sample_ordering_and_search(toy_blowup(), spec, 1, 0)
        spec4 = FamilySpec(4, 4, (1, 2, 3), FLAVOR_G)
        with pytest.raises(ValueError, match="uniformity"):
            sample_ordering_and_search(toy_blowup(), spec4, 1, 0)

    def test_flavor_checked(self):
        with pytest.raises(ValueError, match="flavor G or revG"):
            sample_ordering_and_search(
                toy_blowup(), FamilySpec(3, 3, (1, 2), "F"), 1, 0
            )

    def test_toy_run_reproducible(self):
        spec = FamilySpec(3, 3, (1, 2), FLAVOR_G)
        a = sample_ordering_and_search(toy_blowup(), spec, 12, seed=5)
        b = sample_ordering_and_search(toy_blowup(), spec, 12, seed=5)
        assert a.found == b.found
        assert a.failures == b.failures
        for flavor in ("G", "revG"):
            assert 0.0 <= a.found_fraction(flavor) <= 1.0

    def test_worker_count_does_not_change_report(self):
        spec = FamilySpec(3, 3, (1, 2), FLAVOR_G)
        seq = sample_ordering_and_search(toy_blowup(), spec, 12, seed=5, workers=1)
        par = sample_ordering_and_search(toy_blowup(), spec, 12, seed=5, workers=3)
        assert seq.found == par.found
        assert seq.failures == par.failures

    def test_failures_replay(self):
        from treeramsey import canonical_member, find_ordered_copy

        spec = FamilySpec(3, 3, (1, 2), FLAVOR_G)
        report = sample_ordering_and_search(toy_blowup(), spec, 30, seed=5)
        for failure in report.failures:
            host = ordering_as_hypergraph(toy_blowup(), failure["ordering"])
            target = canonical_member(spec.with_flavor(failure["flavor"]))
            assert find_ordered_copy(host, target) is None
