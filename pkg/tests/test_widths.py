import random
from itertools import permutations

import pytest

from packcover import (
    Digraph,
    Layout,
    PathDecomposition,
    complete_digraph,
    cutwidth,
    delete_arcs,
    delete_vertices,
    directed_cycle,
    directed_pathwidth,
    disjoint_union,
    layout_cutwidth,
    layout_to_decomposition,
    layout_vertex_separation,
    random_tournament,
    transitive_tournament,
    validate_path_decomposition,
)
from oracles import cutwidth_brute, pathwidth_brute, random_digraph


def doubled(g):
    return Digraph(g.n, g.arcs + g.arcs)


class TestLayoutCutwidth:
    def test_reverse_topological_tt3_is_zero(self):
        assert layout_cutwidth(transitive_tournament(3), Layout((2, 1, 0))) == 0

    def test_c3_is_one_in_every_order(self):
        g = directed_cycle(3)
        for perm in permutations(range(3)):
            assert layout_cutwidth(g, Layout(perm)) == 1

    def test_multiplicity_doubles_each_cut(self):
        g = doubled(directed_cycle(3))
        for perm in permutations(range(3)):
            assert layout_cutwidth(g, Layout(perm)) == 2

    def test_non_permutation_rejected(self):
        with pytest.raises(ValueError):
            layout_cutwidth(directed_cycle(3), Layout((0, 1, 1)))

    def test_tiny_cases(self):
        assert layout_cutwidth(Digraph(0, ()), Layout(())) == 0
        assert layout_cutwidth(Digraph(1, ()), Layout((0,))) == 0


class TestCutwidth:
    def test_transitive_tournaments_are_zero(self):
        for n in range(7):
            assert cutwidth(transitive_tournament(n)).value == 0

    def test_c3(self):
        cert = cutwidth(directed_cycle(3))
        assert cert.value == 1
        assert layout_cutwidth(directed_cycle(3), cert.witness) == 1

    def test_two_triangles(self):
        g = disjoint_union(directed_cycle(3), directed_cycle(3))
        assert cutwidth(g).value == 1
        assert cutwidth_brute(g) == 1

    def test_cap(self):
        with pytest.raises(ValueError):
            cutwidth(Digraph(21, ()))


class TestDirectedPathwidth:
    def test_acyclic_is_zero(self):
        assert directed_pathwidth(transitive_tournament(5)).value == 0

    def test_c3_is_one(self):
        assert directed_pathwidth(directed_cycle(3)).value == 1

    def test_complete_digraph_on_three_vertices_is_two(self):
        assert directed_pathwidth(complete_digraph(3)).value == 2
        assert pathwidth_brute(complete_digraph(3))[0] == 2

    def test_witness_validates_at_value(self):
        g = random_tournament(7, 0)
        cert = directed_pathwidth(g)
        assert validate_path_decomposition(g, cert.witness).ok
        assert cert.witness.width() == cert.value

    def test_cap(self):
        with pytest.raises(ValueError):
            directed_pathwidth(Digraph(19, ()))

    def test_empty_and_single(self):
        assert directed_pathwidth(Digraph(0, ())).value == 0
        assert directed_pathwidth(Digraph(1, ())).value == 0
        assert cutwidth(Digraph(0, ())).value == 0


class TestValidator:
    def test_singleton_bags_reverse_topological_tt3(self):
        pd = PathDecomposition((frozenset({2}), frozenset({1}), frozenset({0})))
        chk = validate_path_decomposition(transitive_tournament(3), pd)
        assert chk.ok and pd.width() == 0

    def test_singleton_bags_fail_for_c3(self):
        pd = PathDecomposition((frozenset({0}), frozenset({1}), frozenset({2})))
        chk = validate_path_decomposition(directed_cycle(3), pd)
        assert not chk.ok and chk.condition == 2

    def test_two_bag_cover_of_c3_is_valid(self):
        pd = PathDecomposition((frozenset({0, 1}), frozenset({1, 2})))
        chk = validate_path_decomposition(directed_cycle(3), pd)
        assert chk.ok and pd.width() == 1

    def test_missing_vertex_is_condition_one(self):
        pd = PathDecomposition((frozenset({0, 1}),))
        chk = validate_path_decomposition(directed_cycle(3), pd)
        assert not chk.ok and chk.condition == 1

    def test_gap_is_condition_three(self):
        pd = PathDecomposition(
            (frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2}))
        )
        chk = validate_path_decomposition(Digraph(3, ()), pd)
        assert not chk.ok and chk.condition == 3

    def test_out_of_range_bag_entry_raises(self):
        with pytest.raises(ValueError):
            validate_path_decomposition(Digraph(2, ()), PathDecomposition((frozenset({5}),)))


class TestLayoutToDecomposition:
    def test_reverse_topological_gives_singletons(self):
        g = transitive_tournament(3)
        pd = layout_to_decomposition(g, Layout((2, 1, 0)))
        assert all(len(b) == 1 for b in pd.bags)
        assert validate_path_decomposition(g, pd).ok

    def test_c3_natural_order(self):
        g = directed_cycle(3)
        pd = layout_to_decomposition(g, Layout((0, 1, 2)))
        assert validate_path_decomposition(g, pd).ok
        assert pd.width() == layout_vertex_separation(g, Layout((0, 1, 2))) == 1

    def test_single_vertex(self):
        pd = layout_to_decomposition(Digraph(1, ()), Layout((0,)))
        assert pd.bags == (frozenset({0}),)
        assert pd.width() == 0

    def test_width_equals_vertex_separation_on_random_layouts(self):
        rng = random.Random(17)
        for _ in range(200):
            g = random_digraph(rng.randint(1, 8), rng, max_multiplicity=2)
            order = list(range(g.n))
            rng.shuffle(order)
            lay = Layout(tuple(order))
            pd = layout_to_decomposition(g, lay)
            assert validate_path_decomposition(g, pd).ok
            assert pd.width() == layout_vertex_separation(g, lay)


class TestOptimalityAndInvariants:
    def test_certificates_validate_on_random_digraphs(self):
        rng = random.Random(23)
        for _ in range(100):
            g = random_digraph(rng.randint(0, 9), rng, max_multiplicity=2)
            pcert = directed_pathwidth(g)
            assert validate_path_decomposition(g, pcert.witness).ok
            assert pcert.witness.width() == pcert.value
            ccert = cutwidth(g)
            assert layout_cutwidth(g, ccert.witness) == ccert.value

    def test_agrees_with_brute_force_on_small_random(self):
        rng = random.Random(29)
        for _ in range(40):
            g = random_digraph(rng.randint(1, 5), rng, max_multiplicity=2)
            assert cutwidth(g).value == cutwidth_brute(g)
            assert directed_pathwidth(g).value == pathwidth_brute(g)[0]

    def test_deletion_monotonicity(self):
        rng = random.Random(31)
        for _ in range(60):
            g = random_digraph(rng.randint(2, 7), rng, max_multiplicity=2)
            pw, cw = directed_pathwidth(g).value, cutwidth(g).value
            if g.arcs:
                smaller = delete_arcs(g, [rng.randrange(len(g.arcs))])
                assert directed_pathwidth(smaller).value <= pw
                assert cutwidth(smaller).value <= cw
            smaller = delete_vertices(g, [rng.randrange(g.n)])
            assert directed_pathwidth(smaller).value <= pw
            assert cutwidth(smaller).value <= cw

    def test_disjoint_union_widths(self):
        rng = random.Random(37)
        for _ in range(30):
            a = random_digraph(rng.randint(1, 4), rng)
            b = random_digraph(rng.randint(1, 4), rng)
            u = disjoint_union(a, b)
            pw_a, pw_b = directed_pathwidth(a).value, directed_pathwidth(b).value
            assert directed_pathwidth(u).value == max(pw_a, pw_b)
            cw_u = cutwidth(u).value
            cw_a, cw_b = cutwidth(a).value, cutwidth(b).value
            # parts laid out consecutively give <=; restriction gives >= each part
            assert cw_u <= max(cw_a, cw_b)
            assert cw_u >= cw_a and cw_u >= cw_b

    def test_determinism(self):
        g = random_tournament(8, 4)
        assert directed_pathwidth(g) == directed_pathwidth(g)
        assert cutwidth(g) == cutwidth(g)


class TestStructuredFamilies:
    def test_cycles_with_chords_match_brute_force(self):
        base = directed_cycle(6)
        chords = ((0, 3), (2, 5), (4, 1))
        for take in range(1 << len(chords)):
            arcs = base.arcs + tuple(c for i, c in enumerate(chords) if (take >> i) & 1)
            g = Digraph(6, arcs)
            assert cutwidth(g).value == cutwidth_brute(g)
            assert directed_pathwidth(g).value == pathwidth_brute(g)[0]
