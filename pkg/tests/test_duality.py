import random

import pytest

from packcover import (
    Digraph,
    Layout,
    PiercingInstance,
    Relation,
    SearchLimits,
    contains,
    cover_from_cutwidth_ordering,
    cover_from_path_decomposition,
    cutwidth,
    delete_arcs,
    delete_vertices,
    directed_cycle,
    directed_pathwidth,
    disjoint_union,
    enumerate_minimal_hosts,
    ep_verify,
    host_trace,
    max_packing,
    min_cover,
    pierce_path_subgraphs,
    random_tournament,
    scc,
    transitive_tournament,
)
from oracles import (
    max_disjoint_brute,
    min_hitting_brute,
    min_pierce_brute,
)


def c3():
    return directed_cycle(3)


def shared_triangles():
    # two directed triangles sharing exactly vertex 0
    return Digraph(5, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)))


def fs(*items):
    return frozenset(items)


class TestPiercing:
    def test_disjoint_intervals_are_returned(self):
        inst = PiercingInstance(9, (fs(1, 2), fs(4, 5), fs(7, 8), fs(3,)))
        res = pierce_path_subgraphs(inst, 2)
        assert res.disjoint_members is not None and len(res.disjoint_members) == 3
        picked = [inst.members[i] for i in res.disjoint_members]
        for i in range(3):
            for j in range(i + 1, 3):
                assert not (picked[i] & picked[j])

    def test_common_point_instance(self):
        members = tuple(fs(*range(a, b + 1)) for a, b in ((5, 5), (3, 6), (5, 9), (1, 5)))
        inst = PiercingInstance(10, members)
        res = pierce_path_subgraphs(inst, 1)
        assert res.pierce_set == fs(5)

    def test_two_component_members(self):
        inst = PiercingInstance(6, (fs(1, 2, 5, 6), fs(3, 5)))
        res = pierce_path_subgraphs(inst, 1)
        assert res.pierce_set == fs(5)

    def test_empty_collection(self):
        inst = PiercingInstance(4, ())
        assert pierce_path_subgraphs(inst, 0).pierce_set == frozenset()
        assert inst.max_components == 0

    def test_max_components(self):
        inst = PiercingInstance(8, (fs(1, 2, 4, 6, 7), fs(2, 3)))
        assert inst.max_components == 3

    def test_bad_members_rejected(self):
        with pytest.raises(ValueError):
            PiercingInstance(3, (fs(0, 1),))
        with pytest.raises(ValueError):
            PiercingInstance(3, (frozenset(),))

    def test_exactness_and_alon_bound_on_random_instances(self):
        rng = random.Random(13)
        for _ in range(120):
            length = rng.randint(3, 12)
            members = []
            for _ in range(rng.randint(1, 6)):
                comp_count = rng.randint(1, 3)
                pts: set[int] = set()
                for _ in range(comp_count):
                    a = rng.randint(1, length)
                    b = min(length, a + rng.randint(0, 2))
                    pts.update(range(a, b + 1))
                members.append(frozenset(pts))
            inst = PiercingInstance(length, tuple(members))
            p = inst.max_components
            k = max_disjoint_brute(members)  # guarantees no k+1 disjoint members
            res = pierce_path_subgraphs(inst, k)
            assert res.pierce_set is not None
            assert all(m & res.pierce_set for m in members)
            assert len(res.pierce_set) == min_pierce_brute(length, members)
            assert len(res.pierce_set) <= 2 * p * p * k


class TestPackingCovering:
    def test_two_disjoint_triangles(self):
        g = disjoint_union(c3(), c3())
        fam = enumerate_minimal_hosts(c3(), g, Relation.STRONG_MINOR)
        nu, picked = max_packing(fam, "vertex")
        assert nu == 2 and len(picked) == 2
        cover = min_cover(fam, "vertex")
        assert len(cover) == 2

    def test_shared_vertex_triangles(self):
        g = shared_triangles()
        fam = enumerate_minimal_hosts(c3(), g, Relation.TOPOLOGICAL_MINOR)
        assert max_packing(fam, "vertex")[0] == 1
        assert min_cover(fam, "vertex") == fs(0)
        fam_imm = enumerate_minimal_hosts(c3(), g, Relation.IMMERSION)
        assert max_packing(fam_imm, "arc")[0] == 2
        assert len(min_cover(fam_imm, "arc")) == 2

    def test_empty_family(self):
        fam = enumerate_minimal_hosts(c3(), transitive_tournament(5), Relation.IMMERSION)
        assert max_packing(fam, "vertex") == (0, ())
        assert min_cover(fam, "arc") == frozenset()

    def test_exactness_against_subset_sweep(self):
        rng = random.Random(21)
        hosts = [random_tournament(rng.randint(4, 5), rng.randrange(10**6))
                 for _ in range(10)]
        hosts.append(disjoint_union(c3(), c3()))
        hosts.append(disjoint_union(shared_triangles(), c3()))
        for g in hosts:
            fam = enumerate_minimal_hosts(c3(), g, Relation.TOPOLOGICAL_MINOR)
            if not fam.hosts or len(fam.hosts) > 14:
                continue
            vsets = [fs(*hs.vertices) for hs in fam.hosts]
            assert max_packing(fam, "vertex")[0] == max_disjoint_brute(vsets)
            assert len(min_cover(fam, "vertex")) == min_hitting_brute(vsets)
            asets = [fs(*hs.arc_indices) for hs in fam.hosts]
            assert max_packing(fam, "arc")[0] == max_disjoint_brute(asets)
            assert len(min_cover(fam, "arc")) == min_hitting_brute(asets)

    def test_arcless_hosts_rejected_in_arc_mode(self):
        from packcover import single_vertex

        g = random_tournament(3, 0)
        fam = enumerate_minimal_hosts(single_vertex(), g, Relation.STRONG_MINOR)
        with pytest.raises(ValueError):
            min_cover(fam, "arc")


class TestVertexCover:
    def test_hostless_graph_gives_empty_cover(self):
        g = transitive_tournament(6)
        pd = directed_pathwidth(g).witness
        out = cover_from_path_decomposition(c3(), g, Relation.STRONG_MINOR, pd, 3)
        assert not out.is_packing and out.cover == frozenset()

    def test_two_triangles_pack_at_k2(self):
        g = disjoint_union(c3(), c3())
        pd = directed_pathwidth(g).witness
        out = cover_from_path_decomposition(c3(), g, Relation.STRONG_MINOR, pd, 2)
        assert out.is_packing and len(out.packing) == 2
        seen = set()
        for hs in out.packing:
            assert not (seen & hs.vertices)
            seen |= hs.vertices

    def test_shared_triangles_cover_at_k2(self):
        g = shared_triangles()
        pd = directed_pathwidth(g).witness
        out = cover_from_path_decomposition(c3(), g, Relation.TOPOLOGICAL_MINOR, pd, 2)
        assert not out.is_packing
        assert len(out.cover) <= out.bound_rhs
        assert contains(c3(), delete_vertices(g, out.cover), Relation.TOPOLOGICAL_MINOR) is None

    def test_cover_bound_formula(self):
        g = shared_triangles()
        pd = directed_pathwidth(g).witness
        out = cover_from_path_decomposition(c3(), g, Relation.STRONG_MINOR, pd, 2)
        assert out.bound_rhs == 2 * 1 * 1 * (pd.width() + 1)

    def test_invalid_decomposition_rejected(self):
        from packcover import PathDecomposition

        g = c3()
        bad = PathDecomposition((fs(0), fs(1), fs(2)))
        with pytest.raises(ValueError):
            cover_from_path_decomposition(c3(), g, Relation.STRONG_MINOR, bad, 2)

    def test_relation_scope_enforced(self):
        # a weakly- but not strongly-connected pattern is outside the
        # butterfly/topological scope, while strong minors accept it
        h = Digraph(2, ((0, 1),))
        g = random_tournament(4, 2)
        pd = directed_pathwidth(g).witness
        with pytest.raises(ValueError):
            cover_from_path_decomposition(h, g, Relation.TOPOLOGICAL_MINOR, pd, 2)
        cover_from_path_decomposition(h, g, Relation.STRONG_MINOR, pd, 2)

    def test_k_must_be_positive(self):
        g = c3()
        pd = directed_pathwidth(g).witness
        with pytest.raises(ValueError):
            cover_from_path_decomposition(c3(), g, Relation.STRONG_MINOR, pd, 0)

    def test_trace_components_bounded_by_pattern_sccs(self):
        rng = random.Random(41)
        h2 = disjoint_union(c3(), c3())
        for _ in range(10):
            g = random_tournament(7, rng.randrange(10**6))
            pd = directed_pathwidth(g).witness
            from oracles import random_digraph

            for h in (c3(), h2):
                fam = enumerate_minimal_hosts(
                    h, g, Relation.STRONG_MINOR,
                    limits=SearchLimits(max_pattern_vertices=6),
                )
                p = scc(h).count
                from packcover.duality import _runs

                for hs in fam.hosts:
                    assert len(_runs(host_trace(pd, hs))) <= p

    def test_disjoint_traces_imply_disjoint_hosts(self):
        rng = random.Random(43)
        for _ in range(10):
            g = random_tournament(7, rng.randrange(10**6))
            pd = directed_pathwidth(g).witness
            fam = enumerate_minimal_hosts(c3(), g, Relation.TOPOLOGICAL_MINOR)
            hosts = list(fam.hosts)
            for i in range(len(hosts)):
                for j in range(i + 1, len(hosts)):
                    ti, tj = host_trace(pd, hosts[i]), host_trace(pd, hosts[j])
                    if not (ti & tj):
                        assert not (hosts[i].vertices & hosts[j].vertices)


class TestArcCover:
    def test_hostless_graph(self):
        g = transitive_tournament(5)
        out = cover_from_cutwidth_ordering(c3(), g, cutwidth(g).witness, 2)
        assert not out.is_packing and out.cover == frozenset()

    def test_single_triangle_k1(self):
        g = c3()
        out = cover_from_cutwidth_ordering(c3(), g, cutwidth(g).witness, 1)
        assert out.is_packing and len(out.packing) == 1

    def test_two_triangles_pack_arc_disjointly(self):
        g = disjoint_union(c3(), c3())
        out = cover_from_cutwidth_ordering(c3(), g, cutwidth(g).witness, 2)
        assert out.is_packing and len(out.packing) == 2
        a, b = out.packing
        assert not (set(a.arc_indices) & set(b.arc_indices))

    def test_cover_branch_bound_and_emptiness(self):
        rng = random.Random(47)
        for _ in range(15):
            g = random_tournament(rng.randint(4, 7), rng.randrange(10**6))
            cert = cutwidth(g)
            for k in (1, 2, 3):
                out = cover_from_cutwidth_ordering(c3(), g, cert.witness, k)
                if out.is_packing:
                    assert len(out.packing) == k
                else:
                    assert len(out.cover) <= k * cert.value
                    rem = delete_arcs(g, out.cover)
                    assert contains(c3(), rem, Relation.IMMERSION) is None

    def test_pattern_preconditions(self):
        g = random_tournament(5, 1)
        lay = cutwidth(g).witness
        with pytest.raises(ValueError):
            cover_from_cutwidth_ordering(Digraph(1, ()), g, lay, 1)
        with pytest.raises(ValueError):
            cover_from_cutwidth_ordering(transitive_tournament(3), g, lay, 1)
        with pytest.raises(ValueError):
            cover_from_cutwidth_ordering(c3(), g, Layout((0, 1)), 1)


class TestEpVerify:
    def test_hostless_instance(self):
        rep = ep_verify(c3(), transitive_tournament(6), Relation.STRONG_MINOR, "vertex", 2)
        assert rep.nu == 0 and rep.tau == 0 and rep.bounds_ok

    def test_two_triangles_vertex_mode(self):
        g = disjoint_union(c3(), c3())
        rep = ep_verify(c3(), g, Relation.STRONG_MINOR, "vertex", 3)
        assert (rep.nu, rep.tau) == (2, 2)
        assert rep.bounds_ok and rep.tau_ge_nu
        assert [c.branch for c in rep.checks] == ["packing", "packing", "cover"]

    def test_shared_triangles_both_modes(self):
        g = shared_triangles()
        rep_v = ep_verify(c3(), g, Relation.TOPOLOGICAL_MINOR, "vertex", 2)
        assert (rep_v.nu, rep_v.tau) == (1, 1) and rep_v.bounds_ok
        rep_a = ep_verify(c3(), g, Relation.IMMERSION, "arc", 2)
        assert (rep_a.nu, rep_a.tau) == (2, 2) and rep_a.bounds_ok

    def test_random_tournament_report_fields(self):
        g = random_tournament(7, 3)
        rep = ep_verify(c3(), g, Relation.TOPOLOGICAL_MINOR, "vertex", 2,
                        seed=3, instance_id="t7")
        assert rep.tau >= rep.nu
        assert rep.n == 7 and rep.arcs == 21 and rep.seed == 3
        d = rep.to_json_dict()
        for key in ("relation", "mode", "n", "arcs", "nu", "tau", "k",
                    "constructive_size", "bound_rhs", "bounds_ok", "pw", "ctw", "seed"):
            assert key in d

    def test_arc_mode_requires_immersion(self):
        with pytest.raises(ValueError):
            ep_verify(c3(), c3(), Relation.STRONG_MINOR, "arc", 1)
        with pytest.raises(ValueError):
            ep_verify(c3(), c3(), Relation.IMMERSION, "sideways", 1)
