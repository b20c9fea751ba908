import random

import pytest

from packcover import (
    Digraph,
    EnumerationBudgetError,
    Relation,
    SearchLimits,
    SizeCapError,
    StrongMinorModel,
    PathsModel,
    contains,
    directed_cycle,
    disjoint_union,
    enumerate_minimal_hosts,
    host_digraph,
    model_footprint,
    parse_relation,
    random_tournament,
    relabel,
    single_vertex,
    transitive_tournament,
    verify_model,
)
from oracles import BRUTE_CONTAINS, minimal_hosts_brute, random_digraph

ALL_RELATIONS = list(Relation)
LIMITS = SearchLimits(max_pattern_vertices=6, max_host_vertices=12)


def c3():
    return directed_cycle(3)


def two_cycle():
    return directed_cycle(2)


class TestSpecExamples:
    def test_nothing_cyclic_fits_in_transitive_tournaments(self):
        for n in range(3, 6):
            tt = transitive_tournament(n)
            for rel in ALL_RELATIONS:
                assert contains(c3(), tt, rel) is None

    def test_subdigraph_implies_every_relation(self):
        g = Digraph(4, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 1), (2, 3)))
        assert contains(c3(), g, Relation.SUBDIGRAPH) is not None
        for rel in ALL_RELATIONS:
            model = contains(c3(), g, rel)
            assert model is not None
            assert verify_model(c3(), g, rel, model).ok

    def test_two_cycle_is_topological_minor_of_c3(self):
        model = contains(two_cycle(), c3(), Relation.TOPOLOGICAL_MINOR)
        assert model is not None
        assert verify_model(two_cycle(), c3(), Relation.TOPOLOGICAL_MINOR, model).ok

    def test_two_cycle_is_not_strong_minor_of_c3(self):
        assert contains(two_cycle(), c3(), Relation.STRONG_MINOR) is None

    def test_long_cycles_hide_c3_from_strong_minors_only(self):
        c5 = directed_cycle(5)
        assert contains(c3(), c5, Relation.STRONG_MINOR) is None
        for rel in (Relation.BUTTERFLY_MINOR, Relation.TOPOLOGICAL_MINOR, Relation.IMMERSION):
            assert contains(c3(), c5, rel) is not None

    def test_immersion_with_doubled_arc(self):
        g = Digraph(3, ((0, 1), (0, 1), (1, 2), (2, 0)))
        model = contains(c3(), g, Relation.IMMERSION)
        assert model is not None and verify_model(c3(), g, Relation.IMMERSION, model).ok

    def test_pattern_must_be_nonempty(self):
        with pytest.raises(ValueError):
            contains(Digraph(0, ()), c3(), Relation.SUBDIGRAPH)

    def test_size_caps(self):
        with pytest.raises(SizeCapError):
            contains(transitive_tournament(7), transitive_tournament(8),
                     Relation.SUBDIGRAPH, SearchLimits(max_pattern_vertices=5))
        with pytest.raises(SizeCapError):
            contains(c3(), transitive_tournament(13), Relation.SUBDIGRAPH,
                     SearchLimits(max_host_vertices=12))


class TestAgainstBruteForce:
    def patterns(self):
        return [
            two_cycle(),
            c3(),
            Digraph(2, ((0, 1),)),
            Digraph(3, ((0, 1), (1, 2))),
            Digraph(3, ((0, 1), (0, 1), (1, 2), (2, 0))),  # doubled arc in a cycle
            Digraph(3, ((0, 1), (1, 0), (1, 2))),
        ]

    def hosts(self, rng):
        hosts = [random_tournament(n, rng.randrange(10**6)) for n in (3, 4, 5)]
        hosts += [random_digraph(rng.randint(2, 5), rng, arc_prob=0.4, max_multiplicity=2)
                  for _ in range(12)]
        hosts += [directed_cycle(4), directed_cycle(5), transitive_tournament(4)]
        return hosts

    @pytest.mark.parametrize("rel", ALL_RELATIONS)
    def test_decision_matches_oracle(self, rel):
        rng = random.Random(hash(rel.value) & 0xFFFF)
        brute = BRUTE_CONTAINS[rel]
        for h in self.patterns():
            for g in self.hosts(rng):
                if rel is Relation.BUTTERFLY_MINOR and (g.n > 4 and len(g.arcs) > 8):
                    continue  # the contraction-walk oracle blows up beyond this
                got = contains(h, g, rel, LIMITS)
                expected = brute(h, g)
                assert (got is not None) == expected, (h.arcs, g.arcs, rel)
                if got is not None:
                    assert verify_model(h, g, rel, got).ok

    def test_butterfly_against_contraction_walk_on_small_tournaments(self, tournament_reps):
        for g in tournament_reps[4]:
            for h in (c3(), two_cycle()):
                got = contains(h, g, Relation.BUTTERFLY_MINOR, LIMITS)
                assert (got is not None) == BRUTE_CONTAINS[Relation.BUTTERFLY_MINOR](h, g)


class TestWitnessVerification:
    def test_tampered_immersion_paths_rejected(self):
        h = Digraph(2, ((0, 1), (0, 1)))
        g = Digraph(2, ((0, 1), (0, 1)))
        good = PathsModel(branch_map=(0, 1), paths=((0,), (1,)))
        assert verify_model(h, g, Relation.IMMERSION, good).ok
        shared = PathsModel(branch_map=(0, 1), paths=((0,), (0,)))
        chk = verify_model(h, g, Relation.IMMERSION, shared)
        assert not chk.ok and "share arc" in chk.reason

    def test_strong_minor_with_non_strongly_connected_branch_set_rejected(self):
        g = Digraph(4, ((0, 1), (1, 2), (2, 0), (2, 3)))
        bad = StrongMinorModel(
            branch_sets=(frozenset({0, 3}), frozenset({1}), frozenset({2})),
            arc_assignment=(0, 1, 2),
        )
        chk = verify_model(c3(), g, Relation.STRONG_MINOR, bad)
        assert not chk.ok and "strongly-connected" in chk.reason

    def test_overlapping_branch_sets_rejected(self):
        g = directed_cycle(3)
        bad = StrongMinorModel(
            branch_sets=(frozenset({0}), frozenset({0}), frozenset({2})),
            arc_assignment=(0, 1, 2),
        )
        assert not verify_model(c3(), g, Relation.STRONG_MINOR, bad).ok

    def test_butterfly_replay_rejects_bad_contraction(self):
        g = directed_cycle(4)
        model = contains(c3(), g, Relation.BUTTERFLY_MINOR)
        assert model is not None
        # corrupt the contraction sequence with a non-witness arc pair
        from packcover import ButterflyMinorModel

        bad = ButterflyMinorModel(model.witness_vertices, model.witness_arcs,
                                  ((0, 2),))
        assert not verify_model(c3(), g, Relation.BUTTERFLY_MINOR, bad).ok

    def test_topological_interior_through_branch_vertex_rejected(self):
        g = Digraph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (1, 3)))
        # path 0->1->2->3 passes through branch vertex 1 if 1 is a branch image
        bad = PathsModel(branch_map=(0, 3, 1), paths=((0, 1, 2), (4,), (0,)))
        chk = verify_model(c3(), g, Relation.TOPOLOGICAL_MINOR, bad)
        assert not chk.ok


class TestStructuralProperties:
    def test_relations_are_reflexive(self):
        rng = random.Random(99)
        samples = [random_digraph(rng.randint(1, 5), rng, max_multiplicity=2)
                   for _ in range(8)]
        for g in samples:
            for rel in ALL_RELATIONS:
                model = contains(g, g, rel, SearchLimits(max_pattern_vertices=5))
                assert model is not None
                assert verify_model(g, g, rel, model).ok

    def test_relabeling_invariance(self):
        rng = random.Random(101)
        for _ in range(20):
            h = random_digraph(rng.randint(1, 3), rng, arc_prob=0.5)
            g = random_digraph(rng.randint(2, 5), rng, arc_prob=0.4)
            perm_h = list(range(h.n))
            perm_g = list(range(g.n))
            rng.shuffle(perm_h)
            rng.shuffle(perm_g)
            for rel in ALL_RELATIONS:
                a = contains(h, g, rel) is not None
                b = contains(relabel(h, perm_h), relabel(g, perm_g), rel) is not None
                assert a == b

    def test_topological_implies_butterfly(self, tournament_reps):
        patterns = [c3(), two_cycle(), Digraph(3, ((0, 1), (1, 2)))]
        for n in (3, 4, 5):
            for g in tournament_reps[n]:
                for h in patterns:
                    if contains(h, g, Relation.TOPOLOGICAL_MINOR) is not None:
                        assert contains(h, g, Relation.BUTTERFLY_MINOR) is not None

    def test_determinism(self):
        g = random_tournament(6, 12)
        for rel in ALL_RELATIONS:
            assert contains(c3(), g, rel) == contains(c3(), g, rel)


class TestMinimalHosts:
    def test_unique_triangle_is_the_only_host(self):
        g = Digraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)))
        for rel in ALL_RELATIONS:
            fam = enumerate_minimal_hosts(c3(), g, rel)
            assert len(fam.hosts) == 1
            assert fam.hosts[0].vertices == frozenset({1, 2, 3})

    def test_acyclic_hosts_are_empty(self):
        fam = enumerate_minimal_hosts(c3(), transitive_tournament(4), Relation.STRONG_MINOR)
        assert fam.hosts == ()

    def test_one_vertex_pattern_gives_singletons(self):
        g = random_tournament(4, 5)
        fam = enumerate_minimal_hosts(single_vertex(), g, Relation.STRONG_MINOR)
        assert [sorted(h.vertices) for h in fam.hosts] == [[0], [1], [2], [3]]
        assert all(h.arc_indices == () for h in fam.hosts)

    @pytest.mark.parametrize("rel", ALL_RELATIONS)
    def test_matches_subset_sweep_oracle(self, rel):
        rng = random.Random(hash(rel.value) & 0xFFF)
        patterns = [c3(), two_cycle(), Digraph(2, ((0, 1),))]
        hosts = [random_tournament(4, rng.randrange(10**6)) for _ in range(3)]
        hosts += [random_digraph(4, rng, arc_prob=0.45, max_multiplicity=2) for _ in range(5)]
        hosts += [directed_cycle(4), Digraph(4, ((0, 1), (1, 0), (1, 2), (2, 3), (3, 1)))]
        for h in patterns:
            for g in hosts:
                if len(g.arcs) > 10:
                    continue
                fam = enumerate_minimal_hosts(h, g, rel)
                got = {(hs.vertices, frozenset(hs.arc_indices)) for hs in fam.hosts}
                assert got == minimal_hosts_brute(h, g, rel), (h.arcs, g.arcs, rel)

    def test_minimality_by_arc_deletion(self):
        rng = random.Random(7)
        g = random_tournament(6, 77)
        for rel in (Relation.STRONG_MINOR, Relation.TOPOLOGICAL_MINOR, Relation.IMMERSION):
            fam = enumerate_minimal_hosts(c3(), g, rel)
            for hs in fam.hosts:
                sub = host_digraph(g, hs)
                assert contains(c3(), sub, rel) is not None
                for drop in range(len(hs.arc_indices)):
                    smaller = Digraph(sub.n, tuple(a for i, a in enumerate(sub.arcs) if i != drop))
                    assert contains(c3(), smaller, rel) is None
        del rng

    def test_disconnected_pattern_hosts(self):
        g = disjoint_union(directed_cycle(3), directed_cycle(4))
        fam = enumerate_minimal_hosts(
            disjoint_union(c3(), c3()), g, Relation.TOPOLOGICAL_MINOR,
            limits=SearchLimits(max_pattern_vertices=6),
        )
        assert len(fam.hosts) == 1
        assert fam.hosts[0].vertices == frozenset(range(7))

    def test_budget_error_is_raised(self):
        g = random_tournament(7, 1)
        with pytest.raises(EnumerationBudgetError):
            enumerate_minimal_hosts(c3(), g, Relation.IMMERSION,
                                    limits=SearchLimits(node_budget=50))

    def test_footprint_of_witness_hosts_the_pattern(self):
        rng = random.Random(55)
        for _ in range(20):
            g = random_digraph(rng.randint(3, 6), rng, arc_prob=0.4, max_multiplicity=2)
            for rel in ALL_RELATIONS:
                model = contains(c3(), g, rel)
                if model is None:
                    continue
                fp = model_footprint(c3(), g, rel, model)
                sub = host_digraph(g, fp)
                assert contains(c3(), sub, rel) is not None


def test_parse_relation_aliases():
    assert parse_relation("topo") is Relation.TOPOLOGICAL_MINOR
    assert parse_relation("Strong-Minor") is Relation.STRONG_MINOR
    with pytest.raises(ValueError):
        parse_relation("nope")
