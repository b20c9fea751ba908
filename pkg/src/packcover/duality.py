"""Exact packing/covering numbers and the two constructive cover procedures.

The vertex-mode cover walks an optimal path decomposition: every minimal host
meets a set of bags whose indices form a subgraph of the bag-index path (its
trace); piercing the traces with path vertices and taking the union of the
pierced bags yields a cover of size at most 2*p^2*(k-1)*(width+1), where p
bounds the number of connected components of any trace. The arc-mode cover
repeatedly locates the shortest layout prefix containing an immersion host,
cuts the arcs crossing into the rest, and recurses on the suffix; the cuts
total at most k times the layout's cutwidth.
"""

from dataclasses import dataclass

from .containment import (
    EnumerationBudgetError,
    HostFamily,
    HostSubdigraph,
    Relation,
    SearchLimits,
    contains,
    enumerate_minimal_hosts,
    host_digraph,
    verify_model,
)
from .digraph import Digraph, delete_arcs, delete_vertices, induced_with_map, is_strongly_connected, scc
from .widths import (
    Layout,
    PathDecomposition,
    cutwidth,
    directed_pathwidth,
    layout_cutwidth,
    validate_path_decomposition,
)


# ---------------------------------------------------------------------------
# Piercing on a path
# ---------------------------------------------------------------------------

def _runs(indices) -> list[tuple[int, int]]:
    """Maximal runs of consecutive indices, as (start, end) pairs."""
    out = []
    run_start = None
    prev = None
    for i in sorted(indices):
        if run_start is None:
            run_start = prev = i
        elif i == prev + 1:
            prev = i
        else:
            out.append((run_start, prev))
            run_start = prev = i
    if run_start is not None:
        out.append((run_start, prev))
    return out


@dataclass(frozen=True)
class PiercingInstance:
    """Subgraphs of a path on vertices 1..length, each given by its vertex indices."""

    length: int
    members: tuple[frozenset[int], ...]

    def __post_init__(self):
        for m in self.members:
            if not m:
                raise ValueError("piercing members must be nonempty")
            if min(m) < 1 or max(m) > self.length:
                raise ValueError("member indices must lie in 1..length")

    @property
    def max_components(self) -> int:
        if not self.members:
            return 0
        return max(len(_runs(m)) for m in self.members)


@dataclass(frozen=True)
class PiercingResult:
    disjoint_members: tuple[int, ...] | None  # indices into instance.members
    pierce_set: frozenset[int] | None


def _max_disjoint(sets: list[frozenset]) -> list[int]:
    """Indices of a maximum pairwise-disjoint subfamily (exact branch and bound)."""
    order = sorted(range(len(sets)), key=lambda i: (len(sets[i]), sorted(sets[i]), i))
    best: list[int] = []

    def rec(pool: list[int], chosen: list[int], used: frozenset):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(pool) <= len(best):
            return
        for pos, i in enumerate(pool):
            rest = [j for j in pool[pos + 1:] if not (sets[j] & (used | sets[i]))]
            chosen.append(i)
            rec(rest, chosen, used | sets[i])
            chosen.pop()
            if len(chosen) + (len(pool) - pos - 1) <= len(best):
                return

    rec(order, [], frozenset())
    return sorted(best)


def _min_hitting_set(sets: list[frozenset]) -> frozenset:
    """Exact minimum hitting set; branches on the element covering most sets."""
    work = []
    seen = set()
    for s in sets:
        if not s:
            raise ValueError("cannot hit an empty set")
        if s not in seen:
            seen.add(s)
            work.append(s)
    # supersets of another member are hit for free
    work = [s for s in work if not any(t < s for t in work)]
    if not work:
        return frozenset()

    # greedy upper bound
    greedy: set = set()
    remaining = list(work)
    while remaining:
        counts: dict = {}
        for s in remaining:
            for e in s:
                counts[e] = counts.get(e, 0) + 1
        e = min(counts, key=lambda x: (-counts[x], x))
        greedy.add(e)
        remaining = [s for s in remaining if e not in s]
    best = frozenset(greedy)

    def disjoint_lb(remaining: list[frozenset]) -> int:
        used: set = set()
        count = 0
        for s in sorted(remaining, key=lambda s: (len(s), sorted(s))):
            if not (s & used):
                count += 1
                used |= s
        return count

    def rec(remaining: list[frozenset], chosen: set):
        nonlocal best
        if not remaining:
            if len(chosen) < len(best):
                best = frozenset(chosen)
            return
        if len(chosen) + disjoint_lb(remaining) >= len(best):
            return
        counts: dict = {}
        for s in remaining:
            for e in s:
                counts[e] = counts.get(e, 0) + 1
        e = min(counts, key=lambda x: (-counts[x], x))
        # include e
        chosen.add(e)
        rec([s for s in remaining if e not in s], chosen)
        chosen.remove(e)
        # exclude e everywhere
        reduced = [s - {e} for s in remaining]
        if all(reduced):
            rec(reduced, chosen)

    rec(work, set())
    return best


def pierce_path_subgraphs(inst: PiercingInstance, k: int) -> PiercingResult:
    """Either k+1 pairwise vertex-disjoint members, or an exact minimum pierce set.

    The pierce set meets every member; when no k+1 disjoint members exist its
    size is at most 2*p^2*k (it is an exact minimum, which that bound dominates).
    Pierce candidates are restricted to right endpoints of member runs, which
    is lossless: any piercing vertex can slide to the nearest right endpoint.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    sets = list(inst.members)
    if not sets:
        return PiercingResult(None, frozenset())
    disjoint = _max_disjoint(sets)
    if len(disjoint) >= k + 1:
        return PiercingResult(tuple(disjoint[: k + 1]), None)
    candidates = set()
    for m in sets:
        for _, end in _runs(m):
            candidates.add(end)
    reduced = [frozenset(m & candidates) for m in sets]
    return PiercingResult(None, _min_hitting_set(reduced))


# ---------------------------------------------------------------------------
# Packing and covering over a host family
# ---------------------------------------------------------------------------

def _mode_sets(hosts, mode: str) -> list[frozenset]:
    if mode == "vertex":
        return [frozenset(hs.vertices) for hs in hosts]
    if mode == "arc":
        sets = [frozenset(hs.arc_indices) for hs in hosts]
        if any(not s for s in sets):
            raise ValueError("arc mode cannot handle an arcless host")
        return sets
    raise ValueError(f"mode must be 'vertex' or 'arc', got {mode!r}")


def max_packing(family: HostFamily, mode: str) -> tuple[int, tuple[HostSubdigraph, ...]]:
    """Maximum number of pairwise vertex- (or arc-) disjoint family members."""
    hosts = family.hosts
    if not hosts:
        return 0, ()
    sets = _mode_sets(hosts, mode)
    # hosts sharing the same footprint set can never be packed together
    rep: dict[frozenset, int] = {}
    for i, s in enumerate(sets):
        rep.setdefault(s, i)
    dedup = sorted(rep.values())
    chosen = _max_disjoint([sets[i] for i in dedup])
    picked = tuple(hosts[dedup[i]] for i in chosen)
    return len(picked), picked


def min_cover(family: HostFamily, mode: str) -> frozenset:
    """Minimum vertex (or arc-index) set meeting every family member."""
    hosts = family.hosts
    if not hosts:
        return frozenset()
    return _min_hitting_set(_mode_sets(hosts, mode))


# ---------------------------------------------------------------------------
# Constructive covers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexCoverOutcome:
    packing: tuple[HostSubdigraph, ...] | None
    cover: frozenset | None
    k: int
    p: int
    width: int
    bound_rhs: int
    pierced_bags: tuple[int, ...] = ()

    @property
    def is_packing(self) -> bool:
        return self.packing is not None


@dataclass(frozen=True)
class ArcCoverOutcome:
    packing: tuple[HostSubdigraph, ...] | None
    cover: frozenset | None
    k: int
    t: int
    bound_rhs: int
    cut_sizes: tuple[int, ...] = ()

    @property
    def is_packing(self) -> bool:
        return self.packing is not None


def _lemma_relation_ok(h: Digraph, rel: Relation) -> bool:
    """Pattern/relation combinations the vertex-mode cover is proved for."""
    if rel is Relation.STRONG_MINOR:
        return True
    if rel in (Relation.BUTTERFLY_MINOR, Relation.TOPOLOGICAL_MINOR):
        from .containment import _weak_components

        return all(
            is_strongly_connected(induced_with_map(h, comp)[0])
            for comp in _weak_components(h)
        )
    if rel is Relation.IMMERSION:
        return is_strongly_connected(h)
    return False


def host_trace(pd: PathDecomposition, host: HostSubdigraph) -> frozenset[int]:
    """1-based indices of the bags a host meets."""
    return frozenset(
        i + 1 for i, bag in enumerate(pd.bags) if bag & host.vertices
    )


def cover_from_path_decomposition(
    h: Digraph,
    g: Digraph,
    rel: Relation,
    pd: PathDecomposition,
    k: int,
    limits: SearchLimits | None = None,
    family: HostFamily | None = None,
) -> VertexCoverOutcome:
    """Either k vertex-disjoint hosts or a vertex cover from pierced bags.

    The cover X is a union of bags indexed by a pierce set of the host traces;
    its size is at most 2*p^2*(k-1)*(width+1) with p the pattern's number of
    strongly-connected components, and g minus X contains no host (re-checked).
    """
    if k < 1:
        raise ValueError("k must be positive")
    check = validate_path_decomposition(g, pd)
    if not check.ok:
        raise ValueError(f"invalid path decomposition: {check.detail}")
    if not _lemma_relation_ok(h, rel):
        raise ValueError(
            f"relation {rel.value} needs a pattern with strongly-connected components"
        )
    p = scc(h).count
    width = pd.width()
    bound_rhs = 2 * p * p * (k - 1) * (width + 1)
    if family is None:
        family = enumerate_minimal_hosts(h, g, rel, limits=limits)
    if not family.hosts:
        return VertexCoverOutcome(None, frozenset(), k, p, width, bound_rhs)

    trace_rep: dict[frozenset[int], HostSubdigraph] = {}
    for hs in family.hosts:
        tr = host_trace(pd, hs)
        if len(_runs(tr)) > p:
            raise RuntimeError(
                "internal: a minimal host trace has more components than the pattern"
            )
        trace_rep.setdefault(tr, hs)
    members = sorted(trace_rep, key=lambda m: (len(m), sorted(m)))
    inst = PiercingInstance(len(pd.bags), tuple(members))
    res = pierce_path_subgraphs(inst, k - 1)
    if res.disjoint_members is not None:
        picked = tuple(trace_rep[members[i]] for i in res.disjoint_members)
        seen: set[int] = set()
        for hs in picked:
            if seen & hs.vertices:
                raise RuntimeError("internal: disjoint traces gave overlapping hosts")
            seen |= hs.vertices
        return VertexCoverOutcome(picked, None, k, p, width, bound_rhs)
    pierced = tuple(sorted(res.pierce_set))
    cover: set[int] = set()
    for i in pierced:
        cover |= pd.bags[i - 1]
    remainder = delete_vertices(g, cover)
    if contains(h, remainder, rel, limits) is not None:
        raise RuntimeError("internal: cover does not eliminate every host")
    return VertexCoverOutcome(None, frozenset(cover), k, p, width, bound_rhs, pierced)


def _shrink_immersion_host(
    h: Digraph, g: Digraph, host: HostSubdigraph, limits: SearchLimits | None
) -> HostSubdigraph:
    """Drop arcs while the footprint still immerses the pattern (arc-minimal witness)."""
    arcs = list(host.arc_indices)
    changed = True
    while changed:
        changed = False
        for i in list(arcs):
            trial = [a for a in arcs if a != i]
            sub, vmap = _footprint_digraph(g, trial)
            if contains(h, sub, Relation.IMMERSION, limits) is not None:
                arcs = trial
                changed = True
    sub_vertices = set()
    for i in arcs:
        t, hd = g.arcs[i]
        sub_vertices.add(t)
        sub_vertices.add(hd)
    return HostSubdigraph(frozenset(sub_vertices), tuple(sorted(arcs)))


def _footprint_digraph(g: Digraph, arc_indices) -> tuple[Digraph, dict[int, int]]:
    vertices = set()
    for i in arc_indices:
        t, hd = g.arcs[i]
        vertices.add(t)
        vertices.add(hd)
    from .digraph import subdigraph

    return subdigraph(g, vertices, arc_indices)


def cover_from_cutwidth_ordering(
    h: Digraph,
    g: Digraph,
    layout: Layout,
    k: int,
    limits: SearchLimits | None = None,
) -> ArcCoverOutcome:
    """Either k arc-disjoint immersion hosts or an arc cover of size <= k * t.

    Walks the layout: finds the shortest prefix of the current region whose
    induced subdigraph immerses the pattern, records that host, cuts all arcs
    from the prefix-minus-last vertex part to the rest of the region, and
    continues on the suffix starting at the last prefix vertex. Cuts never
    exceed the layout's cutwidth t, so an emitted cover has at most k*t arcs.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if h.n < 2 or not is_strongly_connected(h):
        raise ValueError("the pattern must be strongly connected with at least 2 vertices")
    t = layout_cutwidth(g, layout)  # also validates the permutation
    bound_rhs = k * t
    from .containment import model_footprint

    region = list(layout.order)
    hosts: list[HostSubdigraph] = []
    cover: set[int] = set()
    cut_sizes: list[int] = []
    while len(hosts) < k and region:
        found_i = None
        witness = None
        prefix_sub = None
        prefix_maps = None
        for i in range(2, len(region) + 1):  # a host needs at least 2 vertices
            sub, vmap, arc_origin = induced_with_map(g, region[:i])
            model = contains(h, sub, Relation.IMMERSION, limits)
            if model is not None:
                found_i = i
                witness = model
                prefix_sub = sub
                prefix_maps = (vmap, arc_origin)
                break
        if found_i is None:
            break
        vmap, arc_origin = prefix_maps
        inv = {new: old for old, new in vmap.items()}
        fp = model_footprint(h, prefix_sub, Relation.IMMERSION, witness)
        host = HostSubdigraph(
            frozenset(inv[v] for v in fp.vertices),
            tuple(sorted(arc_origin[i] for i in fp.arc_indices)),
        )
        host = _shrink_immersion_host(h, g, host, limits)
        hosts.append(host)
        if len(hosts) == k:
            return ArcCoverOutcome(tuple(hosts), None, k, t, bound_rhs, tuple(cut_sizes))
        prefix_set = set(region[: found_i - 1])
        suffix_set = set(region[found_i - 1:])
        cut = {
            ai
            for ai, (tl, hd) in enumerate(g.arcs)
            if tl in prefix_set and hd in suffix_set
        }
        if len(cut) > t:
            raise RuntimeError("internal: a region cut exceeded the layout cutwidth")
        cut_sizes.append(len(cut))
        cover |= cut
        region = region[found_i - 1:]
    remainder = delete_arcs(g, cover)
    if contains(h, remainder, Relation.IMMERSION, limits) is not None:
        raise RuntimeError("internal: arc cover does not eliminate every host")
    return ArcCoverOutcome(None, frozenset(cover), k, t, bound_rhs, tuple(cut_sizes))


# ---------------------------------------------------------------------------
# End-to-end verification of one instance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverCheck:
    k: int
    branch: str  # "packing" | "cover"
    size: int
    bound_rhs: int
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class EpReport:
    relation: str
    mode: str
    n: int
    arcs: int
    nu: int
    tau: int
    k: int  # largest k exercised
    pw: int
    ctw: int
    pattern_sccs: int
    tau_ge_nu: bool
    checks: tuple[CoverCheck, ...]
    bounds_ok: bool
    seed: int | None = None
    instance_id: str = ""

    @property
    def constructive_size(self) -> int:
        return self.checks[-1].size if self.checks else 0

    @property
    def bound_rhs(self) -> int:
        return self.checks[-1].bound_rhs if self.checks else 0

    def to_json_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "relation": self.relation,
            "mode": self.mode,
            "n": self.n,
            "arcs": self.arcs,
            "nu": self.nu,
            "tau": self.tau,
            "k": self.k,
            "constructive_size": self.constructive_size,
            "bound_rhs": self.bound_rhs,
            "bounds_ok": self.bounds_ok,
            "pw": self.pw,
            "ctw": self.ctw,
            "seed": self.seed,
            "tau_ge_nu": self.tau_ge_nu,
            "pattern_sccs": self.pattern_sccs,
            "checks": [
                {
                    "k": c.k,
                    "branch": c.branch,
                    "size": c.size,
                    "bound_rhs": c.bound_rhs,
                    "ok": c.ok,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


def _verify_packed_hosts(
    h: Digraph, g: Digraph, rel: Relation, picked, mode: str,
    limits: SearchLimits | None,
) -> str | None:
    """Re-derive and verify a witness inside each packed host; check disjointness."""
    used_v: set[int] = set()
    used_a: set[int] = set()
    for hs in picked:
        if mode == "vertex" and (used_v & hs.vertices):
            return "packed hosts share a vertex"
        if mode == "arc" and (used_a & set(hs.arc_indices)):
            return "packed hosts share an arc"
        used_v |= hs.vertices
        used_a |= set(hs.arc_indices)
        sub = host_digraph(g, hs)
        model = contains(h, sub, rel, limits)
        if model is None:
            return "a packed host does not contain the pattern"
        chk = verify_model(h, sub, rel, model)
        if not chk.ok:
            return f"witness verification failed: {chk.reason}"
    return None


def ep_verify(
    h: Digraph,
    g: Digraph,
    rel: Relation,
    mode: str,
    k_max: int,
    limits: SearchLimits | None = None,
    seed: int | None = None,
    instance_id: str = "",
) -> EpReport:
    """Exact packing/covering numbers plus constructive covers for k = 1..k_max."""
    if mode not in ("vertex", "arc"):
        raise ValueError("mode must be 'vertex' or 'arc'")
    if k_max < 1:
        raise ValueError("k_max must be positive")
    if mode == "arc" and rel is not Relation.IMMERSION:
        raise ValueError("arc mode is defined for the immersion relation")
    family = enumerate_minimal_hosts(h, g, rel, limits=limits)
    nu, _ = max_packing(family, mode)
    cover = min_cover(family, mode)
    tau = len(cover)
    pw_cert = directed_pathwidth(g)
    ctw_cert = cutwidth(g)
    p = scc(h).count
    checks: list[CoverCheck] = []
    for k in range(1, k_max + 1):
        if mode == "vertex":
            outcome = cover_from_path_decomposition(
                h, g, rel, pw_cert.witness, k, limits=limits, family=family
            )
            if outcome.is_packing:
                err = _verify_packed_hosts(h, g, rel, outcome.packing, mode, limits)
                checks.append(
                    CoverCheck(k, "packing", len(outcome.packing), outcome.bound_rhs,
                               err is None and len(outcome.packing) == k, err or "")
                )
            else:
                size = len(outcome.cover)
                checks.append(
                    CoverCheck(k, "cover", size, outcome.bound_rhs,
                               size <= outcome.bound_rhs)
                )
        else:
            outcome = cover_from_cutwidth_ordering(
                h, g, ctw_cert.witness, k, limits=limits
            )
            if outcome.is_packing:
                err = _verify_packed_hosts(
                    h, g, Relation.IMMERSION, outcome.packing, mode, limits
                )
                checks.append(
                    CoverCheck(k, "packing", len(outcome.packing), outcome.bound_rhs,
                               err is None and len(outcome.packing) == k, err or "")
                )
            else:
                size = len(outcome.cover)
                checks.append(
                    CoverCheck(k, "cover", size, outcome.bound_rhs,
                               size <= outcome.bound_rhs)
                )
    tau_ge_nu = tau >= nu
    bounds_ok = tau_ge_nu and all(c.ok for c in checks)
    return EpReport(
        relation=rel.value,
        mode=mode,
        n=g.n,
        arcs=len(g.arcs),
        nu=nu,
        tau=tau,
        k=k_max,
        pw=pw_cert.value,
        ctw=ctw_cert.value,
        pattern_sccs=p,
        tau_ge_nu=tau_ge_nu,
        checks=tuple(checks),
        bounds_ok=bounds_ok,
        seed=seed,
        instance_id=instance_id,
    )
