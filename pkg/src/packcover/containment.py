"""Containment relations on multi-digraphs: decision, witnesses, minimal hosts.

Five relations are supported: subdigraph, topological minor, immersion, strong
minor, and butterfly minor. `contains` runs an exact backtracking search and
returns a relation-specific witness; `verify_model` re-checks every clause of
the relation definition independently of the search; `enumerate_minimal_hosts`
lists all subdigraph-minimal sub-multidigraphs of the host that contain the
pattern.

Searches for the path-shaped relations share one scheme: pick an injective
image for the pattern's vertices (branch vertices, or contraction roots for
butterfly minors), then route each pattern arc through the host one at a time.
Butterfly-minor witnesses are emitted in subdigraph-plus-contraction-sequence
form: the routed structure is reduced to an in-tree/out-tree pair per root,
whose arcs are contractible in any order, and the verifier simply replays the
contractions.
"""

from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product

import numpy as np

from .digraph import (
    Arc,
    Digraph,
    canonical_form,
    contract_butterfly,
    has_directed_cycle,
    induced,
    is_contractible_arc,
    is_isomorphic,
    is_strongly_connected,
    subdigraph,
)


class Relation(Enum):
    SUBDIGRAPH = "subdigraph"
    TOPOLOGICAL_MINOR = "topological-minor"
    IMMERSION = "immersion"
    STRONG_MINOR = "strong-minor"
    BUTTERFLY_MINOR = "butterfly-minor"


_RELATION_ALIASES = {
    "subdigraph": Relation.SUBDIGRAPH,
    "sub": Relation.SUBDIGRAPH,
    "topological-minor": Relation.TOPOLOGICAL_MINOR,
    "topological": Relation.TOPOLOGICAL_MINOR,
    "topo": Relation.TOPOLOGICAL_MINOR,
    "immersion": Relation.IMMERSION,
    "imm": Relation.IMMERSION,
    "strong-minor": Relation.STRONG_MINOR,
    "strong": Relation.STRONG_MINOR,
    "butterfly-minor": Relation.BUTTERFLY_MINOR,
    "butterfly": Relation.BUTTERFLY_MINOR,
}


def parse_relation(name: str) -> Relation:
    try:
        return _RELATION_ALIASES[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown relation {name!r}") from None


class SizeCapError(ValueError):
    """Input exceeds the configured search caps."""


class EnumerationBudgetError(RuntimeError):
    """Search or enumeration budget exhausted; partial results are unusable."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial  # flagged unusable: may miss hosts


@dataclass(frozen=True)
class SearchLimits:
    max_pattern_vertices: int = 5
    max_host_vertices: int = 12
    node_budget: int = 5_000_000
    candidate_budget: int = 300_000


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, amount: int):
        self.remaining = amount

    def tick(self, cost: int = 1):
        self.remaining -= cost
        if self.remaining < 0:
            raise EnumerationBudgetError("search node budget exhausted")


# ---------------------------------------------------------------------------
# Witness types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubdigraphModel:
    vertex_map: tuple[int, ...]  # pattern vertex -> host vertex, injective
    arc_map: tuple[int, ...]  # pattern arc position -> host arc index, injective


@dataclass(frozen=True)
class PathsModel:
    """Witness for topological minors and immersions.

    `paths[i]` is the directed path replacing pattern arc i, as a sequence of
    host arc indices from branch(tail) to branch(head).
    """

    branch_map: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class StrongMinorModel:
    branch_sets: tuple[frozenset[int], ...]  # pattern vertex -> host vertex set
    arc_assignment: tuple[int, ...]  # pattern arc position -> host arc index


@dataclass(frozen=True)
class ButterflyMinorModel:
    witness_vertices: frozenset[int]
    witness_arcs: tuple[int, ...]  # host arc indices of the witness subdigraph
    contractions: tuple[Arc, ...]  # contracted arcs as original host endpoint pairs


Model = SubdigraphModel | PathsModel | StrongMinorModel | ButterflyMinorModel


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class HostSubdigraph:
    """A sub-multidigraph of a host, as a vertex set plus arc positions."""

    vertices: frozenset[int]
    arc_indices: tuple[int, ...]


@dataclass(frozen=True)
class HostFamily:
    relation: Relation
    pattern: Digraph
    host: Digraph
    hosts: tuple[HostSubdigraph, ...]


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _check_inputs(h: Digraph, g: Digraph, limits: SearchLimits) -> None:
    if h.n < 1:
        raise ValueError("pattern must have at least one vertex")
    if h.n > limits.max_pattern_vertices:
        raise SizeCapError(
            f"pattern has {h.n} vertices, cap is {limits.max_pattern_vertices}"
        )
    if g.n > limits.max_host_vertices:
        raise SizeCapError(f"host has {g.n} vertices, cap is {limits.max_host_vertices}")


def _quick_reject(h: Digraph, g: Digraph) -> bool:
    if h.n > g.n or len(h.arcs) > len(g.arcs):
        return True
    # none of the relations can create directed cycles
    if has_directed_cycle(h) and not has_directed_cycle(g):
        return True
    return False


def _pattern_order(h: Digraph) -> list[int]:
    """Pattern vertices, most constrained (highest degree) first."""
    return sorted(range(h.n), key=lambda v: (-(h.out_degrees[v] + h.in_degrees[v]), v))


def _weak_components(h: Digraph) -> list[list[int]]:
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, hd in h.arcs:
        rt, rh = find(t), find(hd)
        if rt != rh:
            parent[rh] = rt
    groups: dict[int, list[int]] = {}
    for v in range(h.n):
        groups.setdefault(find(v), []).append(v)
    return sorted((sorted(vs) for vs in groups.values()), key=lambda c: (-len(c), c))


def _arcmask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _footprint_masks(n: int, vertices, arc_indices) -> int:
    vmask = 0
    for v in vertices:
        vmask |= 1 << v
    return vmask | (_arcmask(arc_indices) << n)


def _decode_masks(n: int, combined: int) -> tuple[frozenset[int], tuple[int, ...]]:
    vmask = combined & ((1 << n) - 1)
    amask = combined >> n
    vertices = frozenset(v for v in range(n) if (vmask >> v) & 1)
    arcs = tuple(i for i in range(amask.bit_length()) if (amask >> i) & 1)
    return vertices, arcs


_CHUNK = 63
_CHUNK_MASK = (1 << _CHUNK) - 1


class _Collector:
    """Keeps the subset-minimal footprints seen so far, online.

    A candidate dominated by an already-kept one can never be minimal, so it is
    dropped on arrival; keeping only minimal elements also makes the partial-
    domination test (used to prune search branches) cheap. Subset tests run
    vectorized over 63-bit mask chunks once the kept list grows.
    """

    _PY_SCAN = 48  # below this, a plain Python scan beats numpy dispatch

    def __init__(self, budget_candidates: int, total_bits: int = 0):
        self.masks: list[int] = []
        self._seen: set[int] = set()
        self.remaining = budget_candidates
        self.chunks = max(1, (total_bits + _CHUNK - 1) // _CHUNK)
        self._cap = 64
        self._cols = [np.zeros(self._cap, dtype=np.int64) for _ in range(self.chunks)]

    def _split(self, combined: int) -> list[int]:
        parts = []
        for _ in range(self.chunks):
            parts.append(combined & _CHUNK_MASK)
            combined >>= _CHUNK
        if combined:
            raise AssertionError("mask wider than the collector was sized for")
        return parts

    def _grow(self) -> None:
        self._cap *= 2
        for i in range(self.chunks):
            col = np.zeros(self._cap, dtype=np.int64)
            col[: len(self.masks)] = self._cols[i][: len(self.masks)]
            self._cols[i] = col

    def _subset_exists(self, combined: int, strict: bool) -> bool:
        count = len(self.masks)
        if count == 0:
            return False
        if count <= self._PY_SCAN:
            for m in self.masks:
                if (m & combined) == m and (not strict or m != combined):
                    return True
            return False
        parts = self._split(combined)
        sub = None
        eq = None
        for i, part in enumerate(parts):
            inv = np.int64((~part) & _CHUNK_MASK)
            col = self._cols[i][:count]
            ok = (col & inv) == 0
            sub = ok if sub is None else (sub & ok)
            if strict:
                same = col == np.int64(part)
                eq = same if eq is None else (eq & same)
        if strict:
            sub = sub & ~eq
        return bool(sub.any())

    def _superset_exists(self, combined: int) -> bool:
        count = len(self.masks)
        if count == 0:
            return False
        if count <= self._PY_SCAN:
            return any((combined & m) == combined for m in self.masks)
        parts = self._split(combined)
        sup = None
        for i, part in enumerate(parts):
            col = self._cols[i][:count]
            ok = (np.int64(part) & ~col) == 0
            sup = ok if sup is None else (sup & ok)
        return bool(sup.any())

    def add(self, combined: int) -> None:
        if combined in self._seen:
            return
        self._seen.add(combined)
        if self._subset_exists(combined, strict=False):
            return  # a kept candidate sits inside: never minimal
        self.remaining -= 1
        if self.remaining < 0:
            raise EnumerationBudgetError("candidate budget exhausted")
        if self._superset_exists(combined):
            # drop kept supersets of the newcomer
            count = len(self.masks)
            keep = [i for i, m in enumerate(self.masks) if (combined & m) != combined]
            self.masks = [self.masks[i] for i in keep]
            idx = np.array(keep, dtype=np.int64)
            for i in range(self.chunks):
                self._cols[i][: len(keep)] = self._cols[i][:count][idx]
        if len(self.masks) == self._cap:
            self._grow()
        parts = self._split(combined)
        for i in range(self.chunks):
            self._cols[i][len(self.masks)] = parts[i]
        self.masks.append(combined)

    def dominates(self, partial: int) -> bool:
        """True when some kept candidate is a strict subset of `partial`."""
        return self._subset_exists(partial, strict=True)


def _minimal_elements(masks) -> list[int]:
    kept: list[int] = []
    for c in sorted(set(masks), key=lambda m: (bin(m).count("1"), m)):
        if not any((k & c) == k for k in kept):
            kept.append(c)
    return kept


def _automorphisms(h: Digraph) -> list[tuple[int, ...]]:
    """Vertex permutations preserving the arc multiset (desk-scale brute force)."""
    from .digraph import _degree_class_perms

    need = Counter(h.arcs)
    out = []
    for perm in _degree_class_perms(h):
        if Counter((perm[t], perm[hd]) for t, hd in h.arcs) == need:
            out.append(perm)
    return out


def _orbit_canonical(assignment_key: tuple, autos: list[tuple[int, ...]]) -> bool:
    """True iff the assignment is lexicographically least over pattern automorphisms.

    Models related by a pattern automorphism have identical footprints, so the
    enumeration may keep one representative per orbit.
    """
    if len(autos) <= 1:
        return True
    for sigma in autos:
        permuted = tuple(assignment_key[sigma[w]] for w in range(len(assignment_key)))
        if permuted < assignment_key:
            return False
    return True


# ---------------------------------------------------------------------------
# Subdigraph search
# ---------------------------------------------------------------------------

def _search_subdigraph(h: Digraph, g: Digraph, budget: _Budget, on_complete, enumerate_all: bool):
    """Backtracking injective homomorphism respecting arc multiplicities.

    `on_complete(vertex_map, chosen_by_pair)` returns True to stop the search.
    `chosen_by_pair` maps each image pair to the tuple of chosen arc indices.
    """
    order = _pattern_order(h)
    h_pairs = Counter(h.arcs)
    assigned: dict[int, int] = {}
    used: set[int] = set()

    # pattern arcs incident to each vertex, for incremental feasibility checks
    incident: list[list[tuple[Arc, int]]] = [[] for _ in range(h.n)]
    for pair, mult in h_pairs.items():
        incident[pair[0]].append((pair, mult))
        if pair[1] != pair[0]:
            incident[pair[1]].append((pair, mult))

    def arc_choices(vmap: dict[int, int]):
        """All ways to pick distinct host arcs per pattern pair; lexicographic order."""
        pairs = sorted(h_pairs)
        option_lists = []
        for pair in pairs:
            image = (vmap[pair[0]], vmap[pair[1]])
            avail = g.arc_indices_by_pair.get(image, ())
            option_lists.append(sorted(combinations(avail, h_pairs[pair])))
        def rec(i, chosen):
            if i == len(pairs):
                yield dict(zip(pairs, chosen))
                return
            for combo in option_lists[i]:
                yield from rec(i + 1, chosen + [combo])
        yield from rec(0, [])

    def place(idx: int) -> bool:
        budget.tick()
        if idx == h.n:
            vmap = dict(assigned)
            for chosen in arc_choices(vmap):
                if on_complete(vmap, chosen):
                    return True
                if not enumerate_all:
                    break
            return False
        w = order[idx]
        for cand in range(g.n):
            if cand in used:
                continue
            if g.out_degrees[cand] < h.out_degrees[w] or g.in_degrees[cand] < h.in_degrees[w]:
                continue
            ok = True
            for pair, mult in incident[w]:
                other = pair[1] if pair[0] == w else pair[0]
                if other == w or other not in assigned:
                    continue
                image = (
                    (cand, assigned[other]) if pair[0] == w else (assigned[other], cand)
                )
                if len(g.arc_indices_by_pair.get(image, ())) < mult:
                    ok = False
                    break
            if not ok:
                continue
            assigned[w] = cand
            used.add(cand)
            if place(idx + 1):
                return True
            del assigned[w]
            used.remove(cand)
        return False

    place(0)


def _subdigraph_model(h: Digraph, vmap: dict[int, int], chosen: dict) -> SubdigraphModel:
    taken: dict[Arc, int] = {}
    arc_map = []
    for t, hd in h.arcs:
        pair = (t, hd)
        k = taken.get(pair, 0)
        taken[pair] = k + 1
        arc_map.append(chosen[pair][k])
    return SubdigraphModel(tuple(vmap[v] for v in range(h.n)), tuple(arc_map))


# ---------------------------------------------------------------------------
# Path-based searches: topological minor and immersion
# ---------------------------------------------------------------------------

def _search_paths(
    h: Digraph,
    g: Digraph,
    rel: Relation,
    budget: _Budget,
    on_complete,
    enumerate_all: bool,
    collector: _Collector | None = None,
    autos: list[tuple[int, ...]] | None = None,
):
    """Backtracking over branch maps and per-arc routings.

    Topological minors route internally vertex-disjoint paths avoiding all
    branch vertices; immersions route arc-disjoint paths. `on_complete`
    receives (branch_map dict, list of arc-index paths aligned with h.arcs).
    When `autos` is given, only one branch map per pattern-automorphism orbit
    is explored (the footprint family is orbit-invariant).
    """
    topo = rel is Relation.TOPOLOGICAL_MINOR
    order = _pattern_order(h)
    harcs = list(h.arcs)
    branch: dict[int, int] = {}
    branch_used: set[int] = set()
    used_arcs: set[int] = set()
    blocked: set[int] = set()  # topo: branch images + committed interiors
    paths: list[tuple[int, ...]] = []
    masks = [0, 0]  # committed (vertex mask, arc mask), updated incrementally

    def route(ai: int) -> bool:
        if ai == len(harcs):
            return on_complete(dict(branch), list(paths))
        budget.tick()
        src = branch[harcs[ai][0]]
        dst = branch[harcs[ai][1]]
        # domination probes between path commits are optional; the first commit
        # is skipped (no cyclic pattern fits inside one simple path) and the
        # leaf commit is re-checked by collector.add anyway
        probe = collector is not None and 1 <= ai < len(harcs) - 1
        arcs = g.arcs
        out_idx = g.out_arc_indices

        def extend(v: int, cur_arcs: list[int], cur_set: set[int],
                   cur_vertices: set[int]) -> bool:
            budget.tick()
            for idx in out_idx[v]:
                if idx in used_arcs or idx in cur_set:
                    continue
                hd = arcs[idx][1]
                if hd == dst:
                    cur_arcs.append(idx)
                    used_arcs.update(cur_arcs)
                    interiors = cur_vertices - {src}
                    if topo:
                        blocked.update(interiors)
                    paths.append(tuple(cur_arcs))
                    saved = (masks[0], masks[1])
                    for i in cur_arcs:
                        t2, h2 = arcs[i]
                        masks[0] |= (1 << t2) | (1 << h2)
                        masks[1] |= 1 << i
                    stop = False
                    if probe and collector.dominates(masks[0] | (masks[1] << g.n)):
                        pass  # any completion strictly extends a kept candidate
                    else:
                        stop = route(ai + 1)
                    masks[0], masks[1] = saved
                    paths.pop()
                    if topo:
                        blocked.difference_update(interiors)
                    used_arcs.difference_update(cur_arcs)
                    cur_arcs.pop()
                    if stop:
                        return True
                    continue
                if hd in cur_vertices or hd == src:
                    continue
                if topo and hd in blocked:
                    continue
                cur_arcs.append(idx)
                cur_set.add(idx)
                cur_vertices.add(hd)
                if extend(hd, cur_arcs, cur_set, cur_vertices):
                    return True
                cur_vertices.remove(hd)
                cur_set.remove(idx)
                cur_arcs.pop()
            return False

        return extend(src, [], set(), {src})

    def place(idx: int) -> bool:
        budget.tick()
        if idx == h.n:
            if autos is not None and not _orbit_canonical(
                tuple(branch[v] for v in range(h.n)), autos
            ):
                return False
            if topo:
                blocked.update(branch_used)
                stop = route(0)
                blocked.difference_update(branch_used)
            else:
                stop = route(0)
            return stop
        w = order[idx]
        for cand in range(g.n):
            if cand in branch_used:
                continue
            if g.out_degrees[cand] < h.out_degrees[w] or g.in_degrees[cand] < h.in_degrees[w]:
                continue
            branch[w] = cand
            branch_used.add(cand)
            saved_v = masks[0]
            masks[0] |= 1 << cand
            if place(idx + 1):
                return True
            del branch[w]
            branch_used.remove(cand)
            masks[0] = saved_v
        return False

    place(0)


# ---------------------------------------------------------------------------
# Strong minor search
# ---------------------------------------------------------------------------

def _sc_subset_masks(g: Digraph) -> list[int]:
    """Vertex-set masks inducing strongly-connected subdigraphs, small sets first."""
    n = g.n
    adj = g.successor_sets
    masks = []
    for mask in range(1, 1 << n):
        vs = [v for v in range(n) if (mask >> v) & 1]
        if len(vs) == 1:
            masks.append(mask)
            continue
        # forward/backward reachability from vs[0] within the mask
        start = vs[0]
        seen = 1 << start
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                b = 1 << w
                if (mask & b) and not (seen & b):
                    seen |= b
                    stack.append(w)
        if seen != mask:
            continue
        radj: dict[int, list[int]] = {v: [] for v in vs}
        for t, hd in g.arcs:
            if (mask >> t) & 1 and (mask >> hd) & 1:
                radj[hd].append(t)
        seen = 1 << start
        stack = [start]
        while stack:
            v = stack.pop()
            for w in radj[v]:
                b = 1 << w
                if not (seen & b):
                    seen |= b
                    stack.append(w)
        if seen == mask:
            masks.append(mask)
    masks.sort(key=lambda m: (bin(m).count("1"), m))
    return masks


def _arcs_between_masks(g: Digraph, mask_t: int, mask_h: int) -> list[int]:
    return [
        i
        for i, (t, hd) in enumerate(g.arcs)
        if (mask_t >> t) & 1 and (mask_h >> hd) & 1
    ]


def _search_strong_minor(h: Digraph, g: Digraph, budget: _Budget, on_complete,
                         sc_masks: list[int] | None = None):
    """Assign disjoint strongly-connected branch sets with enough cross arcs.

    `on_complete(set_masks)` gets the branch-set masks in pattern-vertex order;
    returns True to stop.
    """
    if sc_masks is None:
        sc_masks = _sc_subset_masks(g)
    order = _pattern_order(h)
    h_pairs = Counter(h.arcs)
    chosen: dict[int, int] = {}
    between_cache: dict[tuple[int, int], int] = {}

    def cross_count(mt: int, mh: int) -> int:
        key = (mt, mh)
        if key not in between_cache:
            between_cache[key] = len(_arcs_between_masks(g, mt, mh))
        return between_cache[key]

    def place(idx: int, used_mask: int) -> bool:
        budget.tick()
        if idx == h.n:
            return on_complete({w: chosen[w] for w in range(h.n)})
        w = order[idx]
        for mask in sc_masks:
            if mask & used_mask:
                continue
            ok = True
            for (t, hd), mult in h_pairs.items():
                if t == w and hd in chosen and cross_count(mask, chosen[hd]) < mult:
                    ok = False
                    break
                if hd == w and t in chosen and cross_count(chosen[t], mask) < mult:
                    ok = False
                    break
            if not ok:
                continue
            chosen[w] = mask
            if place(idx + 1, used_mask | mask):
                return True
            del chosen[w]
        return False

    place(0, 0)


def _strong_minor_model(h: Digraph, g: Digraph, set_masks: dict[int, int]) -> StrongMinorModel:
    branch_sets = tuple(
        frozenset(v for v in range(g.n) if (set_masks[w] >> v) & 1) for w in range(h.n)
    )
    used: set[int] = set()
    assignment = []
    for t, hd in h.arcs:
        for i in _arcs_between_masks(g, set_masks[t], set_masks[hd]):
            if i not in used:
                used.add(i)
                assignment.append(i)
                break
        else:
            raise AssertionError("internal: cross arc vanished")
    return StrongMinorModel(branch_sets, tuple(assignment))


def _minimal_sc_spanning_sets(
    g: Digraph, mask: int, budget: _Budget, cache: dict[int, tuple[frozenset[int], ...]]
) -> tuple[frozenset[int], ...]:
    """All minimal arc sets inside `mask` that span it strongly connectedly.

    Works over distinct (tail, head) pairs (a minimal set never needs a second
    parallel copy) and enumerates minimal pair sets with a partition-branching
    scheme, so each minimal set is visited once; pair sets are then expanded
    into every choice of parallel copies.
    """
    if mask in cache:
        return cache[mask]
    vs = [v for v in range(g.n) if (mask >> v) & 1]
    if len(vs) == 1:
        cache[mask] = (frozenset(),)
        return cache[mask]
    pair_copies: dict[Arc, list[int]] = {}
    for i, (t, hd) in enumerate(g.arcs):
        if (mask >> t) & 1 and (mask >> hd) & 1:
            pair_copies.setdefault((t, hd), []).append(i)
    pairs = sorted(pair_copies)
    tails = [p[0] for p in pairs]
    heads = [p[1] for p in pairs]
    npairs = len(pairs)
    root = vs[0]

    def spans(sel: int) -> bool:
        for ends, starts in ((heads, tails), (tails, heads)):
            reached = 1 << root
            changed = True
            while changed:
                changed = False
                rest = sel
                while rest:
                    b = rest & -rest
                    pi = b.bit_length() - 1
                    rest ^= b
                    if (reached >> starts[pi]) & 1 and not (reached >> ends[pi]) & 1:
                        reached |= 1 << ends[pi]
                        changed = True
            if reached != mask:
                return False
        return True

    def minimize(sel: int, required: int) -> int:
        drop = sel & ~required
        while drop:
            b = drop & -drop
            drop ^= b
            if spans(sel ^ b):
                sel ^= b
        return sel

    out_pair_sets: list[int] = []

    def node(avail: int, required: int) -> None:
        budget.tick()
        if (avail & required) != required or not spans(avail):
            return
        m = minimize(avail, required)
        truly = True
        req_bits = m & required
        while req_bits:
            b = req_bits & -req_bits
            req_bits ^= b
            if spans(m ^ b):
                truly = False
                break
        if truly:
            out_pair_sets.append(m)
        req = required
        rest = m
        while rest:
            b = rest & -rest
            rest ^= b
            if not (required >> (b.bit_length() - 1)) & 1:
                node(avail ^ b, req)
            req |= b

    node((1 << npairs) - 1, 0)

    expanded: set[frozenset[int]] = set()
    for pset in out_pair_sets:
        choice_lists = []
        rest = pset
        while rest:
            b = rest & -rest
            rest ^= b
            choice_lists.append(pair_copies[pairs[b.bit_length() - 1]])
        for combo in product(*choice_lists):
            expanded.add(frozenset(combo))
    cache[mask] = tuple(sorted(expanded, key=lambda s: (len(s), sorted(s))))
    return cache[mask]


# ---------------------------------------------------------------------------
# Butterfly minor search
# ---------------------------------------------------------------------------

def _search_butterfly(
    h: Digraph,
    g: Digraph,
    budget: _Budget,
    on_complete,
    enumerate_all: bool,
    collector: _Collector | None = None,
    autos: list[tuple[int, ...]] | None = None,
):
    """Root-and-connector search for butterfly minors.

    Each pattern vertex w gets a root r_w; each pattern arc (w, w') is realized
    by a host arc reached from r_w through vertices reserved for w's out-side
    and continuing to r_{w'} through vertices reserved for w''s in-side. The
    out-side and in-side of one root may only share the root itself, and
    different roots' sides are disjoint; under those rules the union of
    connectors always reduces to an in-tree/out-tree pair whose arcs are
    contractible in any order.

    `on_complete(roots dict, cross list, out_paths, in_paths)` -> True to stop.
    """
    order = _pattern_order(h)
    harcs = list(h.arcs)
    roots: dict[int, int] = {}
    root_verts: set[int] = set()
    color: dict[int, tuple[int, str]] = {}
    used_cross: set[int] = set()
    cross: list[int] = []
    out_paths: list[tuple[int, ...]] = []
    in_paths: list[tuple[int, ...]] = []

    masks = [0, 0]  # committed (vertex mask, arc mask)

    def colorable(v: int, w: int, side: str) -> bool:
        if v in root_verts:
            return False
        c = color.get(v)
        return c is None or c == (w, side)

    def route(ai: int) -> bool:
        if ai == len(harcs):
            return on_complete(dict(roots), list(cross), list(out_paths), list(in_paths))
        budget.tick()
        w, w2 = harcs[ai]
        r_from, r_to = roots[w], roots[w2]

        def commit(cross_idx: int, opath: list[int], ipath: list[int]) -> bool:
            used_cross.add(cross_idx)
            cross.append(cross_idx)
            out_paths.append(tuple(opath))
            in_paths.append(tuple(ipath))
            saved = (masks[0], masks[1])
            for i in opath + [cross_idx] + ipath:
                t2, h2 = g.arcs[i]
                masks[0] |= (1 << t2) | (1 << h2)
                masks[1] |= 1 << i
            stop = False
            if collector is not None and collector.dominates(
                masks[0] | (masks[1] << g.n)
            ):
                pass
            else:
                stop = route(ai + 1)
            masks[0], masks[1] = saved
            in_paths.pop()
            out_paths.pop()
            cross.pop()
            used_cross.remove(cross_idx)
            return stop

        def try_in(v: int, ipath: list[int], ivisited: set[int],
                   cross_idx: int, opath: list[int]) -> bool:
            budget.tick()
            for idx in g.out_arc_indices[v]:
                if idx in ipath:
                    continue
                hd = g.arcs[idx][1]
                if hd == r_to:
                    ipath.append(idx)
                    if commit(cross_idx, opath, ipath):
                        return True
                    ipath.pop()
                    continue
                if hd in ivisited or not colorable(hd, w2, "I"):
                    continue
                newly = hd not in color
                if newly:
                    color[hd] = (w2, "I")
                ivisited.add(hd)
                ipath.append(idx)
                if try_in(hd, ipath, ivisited, cross_idx, opath):
                    return True
                ipath.pop()
                ivisited.remove(hd)
                if newly:
                    del color[hd]
            return False

        def try_out(x: int, opath: list[int], ovisited: set[int]) -> bool:
            budget.tick()
            for idx in g.out_arc_indices[x]:
                t, y = g.arcs[idx]
                # use (x, y) as the cross arc
                if idx not in used_cross:
                    if y == r_to:
                        if commit(idx, opath, []):
                            return True
                    elif colorable(y, w2, "I"):
                        newly = y not in color
                        if newly:
                            color[y] = (w2, "I")
                        if try_in(y, [], {y}, idx, opath):
                            return True
                        if newly:
                            del color[y]
                # or extend the out-side connector through y
                if y in ovisited or not colorable(y, w, "O"):
                    continue
                if idx in opath:
                    continue
                newly = y not in color
                if newly:
                    color[y] = (w, "O")
                ovisited.add(y)
                opath.append(idx)
                if try_out(y, opath, ovisited):
                    return True
                opath.pop()
                ovisited.remove(y)
                if newly:
                    del color[y]
            return False

        return try_out(r_from, [], {r_from})

    def place(idx: int) -> bool:
        budget.tick()
        if idx == h.n:
            if autos is not None and not _orbit_canonical(
                tuple(roots[v] for v in range(h.n)), autos
            ):
                return False
            return route(0)
        w = order[idx]
        for cand in range(g.n):
            if cand in root_verts or cand in color:
                continue
            roots[w] = cand
            root_verts.add(cand)
            saved_v = masks[0]
            masks[0] |= 1 << cand
            if place(idx + 1):
                return True
            del roots[w]
            root_verts.remove(cand)
            masks[0] = saved_v
        return False

    place(0)


def _butterfly_model(
    h: Digraph,
    g: Digraph,
    roots: dict[int, int],
    cross: list[int],
    out_paths: list[tuple[int, ...]],
    in_paths: list[tuple[int, ...]],
) -> ButterflyMinorModel:
    """Reduce routed connectors to trees and emit a replayable witness."""
    out_arcset: dict[int, set[int]] = {w: set() for w in range(h.n)}
    in_arcset: dict[int, set[int]] = {w: set() for w in range(h.n)}
    for (w, w2), op, ip in zip(h.arcs, out_paths, in_paths):
        out_arcset[w].update(op)
        in_arcset[w2].update(ip)

    tree_arcs: set[int] = set()
    contraction_order: list[tuple[int, int, Arc]] = []  # (w, depth-key, arc endpoints)

    for w in range(h.n):
        r = roots[w]
        # in-side: arcs point toward the root; BFS along reversed arcs from r
        radj: dict[int, list[tuple[int, int]]] = {}
        for i in in_arcset[w]:
            t, hd = g.arcs[i]
            radj.setdefault(hd, []).append((t, i))
        depth = {r: 0}
        queue = deque([r])
        in_tree: list[tuple[int, int]] = []  # (depth of child, arc index)
        while queue:
            v = queue.popleft()
            for t, i in sorted(radj.get(v, ())):
                if t not in depth:
                    depth[t] = depth[v] + 1
                    in_tree.append((depth[t], i))
                    queue.append(t)
        # leaves first: contract deepest child arcs before shallower ones
        for d, i in sorted(in_tree, key=lambda x: (-x[0], x[1])):
            tree_arcs.add(i)
            contraction_order.append((w, 0, g.arcs[i]))
        # out-side: arcs point away from the root
        adj: dict[int, list[tuple[int, int]]] = {}
        for i in out_arcset[w]:
            t, hd = g.arcs[i]
            adj.setdefault(t, []).append((hd, i))
        depth = {r: 0}
        queue = deque([r])
        out_tree: list[tuple[int, int]] = []
        while queue:
            v = queue.popleft()
            for hd, i in sorted(adj.get(v, ())):
                if hd not in depth:
                    depth[hd] = depth[v] + 1
                    out_tree.append((depth[hd], i))
                    queue.append(hd)
        for d, i in sorted(out_tree, key=lambda x: (x[0], x[1])):
            tree_arcs.add(i)
            contraction_order.append((w, 1, g.arcs[i]))

    witness_arcs = tuple(sorted(tree_arcs | set(cross)))
    vertices = set(roots.values())
    for i in witness_arcs:
        t, hd = g.arcs[i]
        vertices.add(t)
        vertices.add(hd)
    contractions = tuple(arc for _, _, arc in contraction_order)
    return ButterflyMinorModel(frozenset(vertices), witness_arcs, contractions)


# ---------------------------------------------------------------------------
# contains / verify_model
# ---------------------------------------------------------------------------

def contains(h: Digraph, g: Digraph, rel: Relation, limits: SearchLimits | None = None):
    """Exact containment decision; returns a verifying witness or None."""
    limits = limits or SearchLimits()
    _check_inputs(h, g, limits)
    if _quick_reject(h, g):
        return None
    budget = _Budget(limits.node_budget)
    found: list[Model] = []

    if rel is Relation.SUBDIGRAPH:
        def on_sub(vmap, chosen):
            found.append(_subdigraph_model(h, vmap, chosen))
            return True

        _search_subdigraph(h, g, budget, on_sub, enumerate_all=False)
    elif rel in (Relation.TOPOLOGICAL_MINOR, Relation.IMMERSION):
        def on_paths(branch, paths):
            found.append(PathsModel(tuple(branch[v] for v in range(h.n)), tuple(paths)))
            return True

        _search_paths(h, g, rel, budget, on_paths, enumerate_all=False)
    elif rel is Relation.STRONG_MINOR:
        def on_strong(set_masks):
            found.append(_strong_minor_model(h, g, set_masks))
            return True

        _search_strong_minor(h, g, budget, on_strong)
    elif rel is Relation.BUTTERFLY_MINOR:
        def on_bfly(roots, cross, out_paths, in_paths):
            found.append(_butterfly_model(h, g, roots, cross, out_paths, in_paths))
            return True

        _search_butterfly(h, g, budget, on_bfly, enumerate_all=False)
    else:  # pragma: no cover
        raise ValueError(f"unsupported relation {rel}")
    return found[0] if found else None


def _check_path(g: Digraph, path: tuple[int, ...], src: int, dst: int) -> str | None:
    """Validate one directed path of arc indices; returns an error or None."""
    if not path:
        return "path is empty (length must be at least 1)"
    cur = src
    seen = {src}
    for i in path:
        if not (0 <= i < len(g.arcs)):
            return f"arc index {i} out of range"
        t, hd = g.arcs[i]
        if t != cur:
            return f"arc {i} does not continue the path (tail {t}, expected {cur})"
        if hd in seen and hd != dst:
            return f"path revisits vertex {hd}"
        seen.add(hd)
        cur = hd
    if cur != dst:
        return f"path ends at {cur}, expected {dst}"
    inner = [g.arcs[i][1] for i in path[:-1]]
    if dst in inner or src in inner:
        return "path passes through one of its endpoints"
    return None


def verify_model(h: Digraph, g: Digraph, rel: Relation, model) -> CheckResult:
    """Structural re-check of every clause of the relation definition."""
    if rel is Relation.SUBDIGRAPH:
        if not isinstance(model, SubdigraphModel):
            return CheckResult(False, "wrong model type for subdigraph")
        vm = model.vertex_map
        if len(vm) != h.n or len(set(vm)) != h.n or any(not 0 <= v < g.n for v in vm):
            return CheckResult(False, "vertex map is not injective into the host")
        if len(model.arc_map) != len(h.arcs) or len(set(model.arc_map)) != len(model.arc_map):
            return CheckResult(False, "arc map is not injective over pattern arcs")
        for (t, hd), i in zip(h.arcs, model.arc_map):
            if not (0 <= i < len(g.arcs)):
                return CheckResult(False, f"arc index {i} out of range")
            if g.arcs[i] != (vm[t], vm[hd]):
                return CheckResult(False, f"arc index {i} does not realize pattern arc ({t},{hd})")
        return CheckResult(True)

    if rel in (Relation.TOPOLOGICAL_MINOR, Relation.IMMERSION):
        if not isinstance(model, PathsModel):
            return CheckResult(False, "wrong model type for a path-based relation")
        bm = model.branch_map
        if len(bm) != h.n or len(set(bm)) != h.n or any(not 0 <= v < g.n for v in bm):
            return CheckResult(False, "branch map is not injective into the host")
        if len(model.paths) != len(h.arcs):
            return CheckResult(False, "one path per pattern arc is required")
        for (t, hd), path in zip(h.arcs, model.paths):
            err = _check_path(g, path, bm[t], bm[hd])
            if err:
                return CheckResult(False, f"pattern arc ({t},{hd}): {err}")
        for i in range(len(model.paths)):
            for j in range(i + 1, len(model.paths)):
                shared = set(model.paths[i]) & set(model.paths[j])
                if shared:
                    return CheckResult(
                        False, f"paths {i} and {j} share arc index {sorted(shared)[0]}"
                    )
        if rel is Relation.TOPOLOGICAL_MINOR:
            branch_set = set(bm)
            interiors = []
            for path in model.paths:
                interiors.append({g.arcs[i][1] for i in path[:-1]})
            for i, inner in enumerate(interiors):
                hit = inner & branch_set
                if hit:
                    return CheckResult(
                        False, f"path {i} passes through branch vertex {sorted(hit)[0]}"
                    )
            for i in range(len(interiors)):
                for j in range(i + 1, len(interiors)):
                    hit = interiors[i] & interiors[j]
                    if hit:
                        return CheckResult(
                            False, f"paths {i} and {j} share internal vertex {sorted(hit)[0]}"
                        )
        return CheckResult(True)

    if rel is Relation.STRONG_MINOR:
        if not isinstance(model, StrongMinorModel):
            return CheckResult(False, "wrong model type for strong minor")
        sets = model.branch_sets
        if len(sets) != h.n:
            return CheckResult(False, "one branch set per pattern vertex is required")
        seen: set[int] = set()
        for k, b in enumerate(sets):
            if not b:
                return CheckResult(False, f"branch set {k} is empty")
            if any(not 0 <= v < g.n for v in b):
                return CheckResult(False, f"branch set {k} out of range")
            if seen & b:
                return CheckResult(False, f"branch set {k} overlaps another branch set")
            seen |= b
            if not is_strongly_connected(induced(g, b)):
                return CheckResult(False, f"branch set {k} does not induce a strongly-connected subdigraph")
        if len(model.arc_assignment) != len(h.arcs):
            return CheckResult(False, "one host arc per pattern arc is required")
        if len(set(model.arc_assignment)) != len(model.arc_assignment):
            return CheckResult(False, "arc assignment is not injective")
        for (t, hd), i in zip(h.arcs, model.arc_assignment):
            if not (0 <= i < len(g.arcs)):
                return CheckResult(False, f"arc index {i} out of range")
            at, ah = g.arcs[i]
            if at not in sets[t] or ah not in sets[hd]:
                return CheckResult(
                    False, f"assigned arc {i} does not join branch sets of pattern arc ({t},{hd})"
                )
        return CheckResult(True)

    if rel is Relation.BUTTERFLY_MINOR:
        if not isinstance(model, ButterflyMinorModel):
            return CheckResult(False, "wrong model type for butterfly minor")
        if any(not 0 <= v < g.n for v in model.witness_vertices):
            return CheckResult(False, "witness vertex out of range")
        if len(set(model.witness_arcs)) != len(model.witness_arcs):
            return CheckResult(False, "witness arc indices repeat")
        for i in model.witness_arcs:
            if not (0 <= i < len(g.arcs)):
                return CheckResult(False, f"witness arc index {i} out of range")
            t, hd = g.arcs[i]
            if t not in model.witness_vertices or hd not in model.witness_vertices:
                return CheckResult(False, f"witness arc {i} leaves the witness vertex set")
        current, vmap = subdigraph(g, model.witness_vertices, model.witness_arcs)
        cur_of = dict(vmap)  # original host vertex -> current vertex
        for t, hd in model.contractions:
            if t not in cur_of or hd not in cur_of:
                return CheckResult(False, f"contraction ({t},{hd}) uses a non-witness vertex")
            ct, ch = cur_of[t], cur_of[hd]
            if ct == ch:
                return CheckResult(False, f"contraction ({t},{hd}) endpoints already merged")
            if (ct, ch) not in current.arc_multiset:
                return CheckResult(False, f"contraction ({t},{hd}) is not a current arc")
            if not is_contractible_arc(current, (ct, ch)):
                return CheckResult(False, f"contraction ({t},{hd}) is not contractible when applied")
            current, m = contract_butterfly(current, (ct, ch))
            cur_of = {v: m[c] for v, c in cur_of.items()}
        if not is_isomorphic(current, h):
            return CheckResult(False, "contracted witness is not isomorphic to the pattern")
        return CheckResult(True)

    return CheckResult(False, f"unsupported relation {rel}")


def model_footprint(h: Digraph, g: Digraph, rel: Relation, model) -> HostSubdigraph:
    """The sub-multidigraph of g actually used by a witness."""
    if rel is Relation.SUBDIGRAPH:
        arcs = tuple(sorted(model.arc_map))
        vertices = set(model.vertex_map)
    elif rel in (Relation.TOPOLOGICAL_MINOR, Relation.IMMERSION):
        arcs = tuple(sorted({i for p in model.paths for i in p}))
        vertices = set(model.branch_map)
    elif rel is Relation.STRONG_MINOR:
        used = set(model.arc_assignment)
        vertices = set()
        for b in model.branch_sets:
            vertices |= b
            for i, (t, hd) in enumerate(g.arcs):
                if t in b and hd in b:
                    used.add(i)
        arcs = tuple(sorted(used))
    elif rel is Relation.BUTTERFLY_MINOR:
        arcs = tuple(sorted(model.witness_arcs))
        vertices = set(model.witness_vertices)
    else:  # pragma: no cover
        raise ValueError(f"unsupported relation {rel}")
    for i in arcs:
        t, hd = g.arcs[i]
        vertices.add(t)
        vertices.add(hd)
    return HostSubdigraph(frozenset(vertices), arcs)


# ---------------------------------------------------------------------------
# Minimal host enumeration
# ---------------------------------------------------------------------------

def _collect_candidates_connected(
    h: Digraph, g: Digraph, rel: Relation, budget: _Budget, collector: _Collector,
    sc_cache: dict | None = None,
) -> None:
    """Collect hosting footprints for a weakly-connected pattern."""
    autos = _automorphisms(h) if h.n <= 8 else None
    if rel is Relation.SUBDIGRAPH:
        def on_sub(vmap, chosen):
            arcs = {i for combo in chosen.values() for i in combo}
            collector.add(_footprint_masks(g.n, vmap.values(), arcs))
            return False

        _search_subdigraph(h, g, budget, on_sub, enumerate_all=True)
    elif rel in (Relation.TOPOLOGICAL_MINOR, Relation.IMMERSION):
        def on_paths(branch, paths):
            arcs = {i for p in paths for i in p}
            vertices = set(branch.values())
            for i in arcs:
                t, hd = g.arcs[i]
                vertices.add(t)
                vertices.add(hd)
            collector.add(_footprint_masks(g.n, vertices, arcs))
            return False

        _search_paths(h, g, rel, budget, on_paths, enumerate_all=True,
                      collector=collector, autos=autos)
    elif rel is Relation.BUTTERFLY_MINOR:
        def on_bfly(roots, cross, out_paths, in_paths):
            arcs = set(cross)
            for p in out_paths:
                arcs.update(p)
            for p in in_paths:
                arcs.update(p)
            vertices = set(roots.values())
            for i in arcs:
                t, hd = g.arcs[i]
                vertices.add(t)
                vertices.add(hd)
            collector.add(_footprint_masks(g.n, vertices, arcs))
            return False

        _search_butterfly(h, g, budget, on_bfly, enumerate_all=True,
                          collector=collector, autos=autos)
    elif rel is Relation.STRONG_MINOR:
        sc_masks = _sc_subset_masks(g)
        popcnt = {m: bin(m).count("1") for m in sc_masks}
        piece_cache = sc_cache if sc_cache is not None else {}
        h_pairs = sorted(Counter(h.arcs).items())
        order = _pattern_order(h)
        between: dict[tuple[int, int], list[int]] = {}

        def arcs_between(mt: int, mh: int) -> list[int]:
            key = (mt, mh)
            got = between.get(key)
            if got is None:
                got = between[key] = _arcs_between_masks(g, mt, mh)
            return got

        def emit_products(set_masks: dict[int, int], used_mask: int) -> None:
            """Enumerate piece arc sets and cross-arc choices for fixed branch sets."""
            piece_lists = [
                [_arcmask(s) for s in _minimal_sc_spanning_sets(g, set_masks[w], budget, piece_cache)]
                for w in range(h.n)
            ]

            def pick_cross(pi: int, arc_mask: int) -> None:
                if pi == len(h_pairs):
                    collector.add(used_mask | (arc_mask << g.n))
                    return
                (t, hd), mult = h_pairs[pi]
                avail = arcs_between(set_masks[t], set_masks[hd])
                for combo in combinations(avail, mult):
                    m = arc_mask
                    for i in combo:
                        m |= 1 << i
                    if pi + 1 < len(h_pairs) and collector.dominates(
                        used_mask | (m << g.n)
                    ):
                        continue
                    pick_cross(pi + 1, m)

            def pick_piece(w: int, piece_arcs: int) -> None:
                budget.tick()
                if w == h.n:
                    pick_cross(0, piece_arcs)
                    return
                for pm in piece_lists[w]:
                    nxt = piece_arcs | pm
                    if collector.dominates(used_mask | (nxt << g.n)):
                        continue
                    pick_piece(w + 1, nxt)

            pick_piece(0, 0)

        def assemble(idx: int, used_mask: int, free: int,
                     set_masks: dict[int, int]) -> None:
            budget.tick()
            if idx == h.n:
                key = tuple(set_masks[v] for v in range(h.n))
                if autos is not None and not _orbit_canonical(key, autos):
                    return
                emit_products(set_masks, used_mask)
                return
            w = order[idx]
            room = free - (h.n - idx - 1)  # later pattern vertices need one each
            for mask in sc_masks:
                pc = popcnt[mask]
                if pc > room:
                    break  # sc_masks are sorted by size
                if mask & used_mask:
                    continue
                ok = True
                for (t, hd), mult in h_pairs:
                    if t == w and hd in set_masks and len(
                        arcs_between(mask, set_masks[hd])
                    ) < mult:
                        ok = False
                        break
                    if hd == w and t in set_masks and len(
                        arcs_between(set_masks[t], mask)
                    ) < mult:
                        ok = False
                        break
                if not ok:
                    continue
                set_masks[w] = mask
                assemble(idx + 1, used_mask | mask, free - pc, set_masks)
                del set_masks[w]

        assemble(0, 0, g.n, {})
    else:  # pragma: no cover
        raise ValueError(f"unsupported relation {rel}")


def enumerate_minimal_hosts(
    h: Digraph,
    g: Digraph,
    rel: Relation,
    cap: int | None = None,
    limits: SearchLimits | None = None,
) -> HostFamily:
    """All subdigraph-minimal sub-multidigraphs of g containing h under rel.

    Candidates are the footprints of containment models; the subdigraph-minimal
    elements of that family are exactly the minimal hosts. Deleting any arc of
    a returned host (or removing a required isolated vertex) loses containment.

    Raises EnumerationBudgetError when budgets are exhausted; partial results
    attached to the error are flagged unusable.
    """
    limits = limits or SearchLimits()
    _check_inputs(h, g, limits)
    if cap is None:
        cap = limits.candidate_budget
    family_sorted: tuple[HostSubdigraph, ...] = ()
    if not _quick_reject(h, g):
        budget = _Budget(limits.node_budget)
        collector = _Collector(cap, g.n + len(g.arcs))
        comps = _weak_components(h)
        try:
            if len(comps) == 1 or rel is Relation.IMMERSION:
                # immersion components may share host vertices: no decomposition
                _collect_candidates_connected(h, g, rel, budget, collector)
                minimal = _minimal_elements(collector.masks)
            else:
                minimal = _combine_component_candidates(h, g, rel, comps, budget, cap)
        except EnumerationBudgetError as e:
            raise EnumerationBudgetError(str(e), partial=None) from None
        hosts = []
        for m in minimal:
            vertices, arcs = _decode_masks(g.n, m)
            hosts.append(HostSubdigraph(vertices, arcs))
        hosts.sort(key=lambda hs: (len(hs.vertices), sorted(hs.vertices), hs.arc_indices))
        family_sorted = tuple(hosts)
    return HostFamily(rel, h, g, family_sorted)


def _combine_component_candidates(
    h: Digraph, g: Digraph, rel: Relation, comps: list[list[int]],
    budget: _Budget, cap: int,
) -> list[int]:
    """Vertex-disjoint combination of per-component minimal candidates.

    When all pattern components are isomorphic, every combination is itself
    minimal: a candidate inside the union is weakly connected, so it lies in a
    single part, and parts drawn from one minimal list are incomparable. With
    mixed components a final sweep is still required.
    """
    sub_patterns = []
    for comp in comps:
        sub, _, _ = _component_pattern(h, comp)
        sub_patterns.append(sub)
    # isomorphic components share one candidate list
    canon_keys = [canonical_form(p) if p.n <= 9 else None for p in sub_patterns]
    lists: list[list[int]] = []
    computed: dict = {}
    sc_cache: dict = {}
    for p, key in zip(sub_patterns, canon_keys):
        if key is not None and key in computed:
            lists.append(computed[key])
            continue
        collector = _Collector(cap, g.n + len(g.arcs))
        _collect_candidates_connected(p, g, rel, budget, collector, sc_cache=sc_cache)
        candidates = _minimal_elements(collector.masks)
        if key is not None:
            computed[key] = candidates
        lists.append(candidates)

    vmask_all = (1 << g.n) - 1
    out: set[int] = set()

    groups: list[tuple[list[int], int]] = []  # (candidate list, count) for equal components
    used_idx: set[int] = set()
    for i, key in enumerate(canon_keys):
        if i in used_idx:
            continue
        same = [j for j in range(len(canon_keys)) if canon_keys[j] == key and key is not None]
        if not same:
            same = [i]
        for j in same:
            used_idx.add(j)
        groups.append((lists[i], len(same)))

    def rec(gi: int, used_vmask: int, combined: int) -> None:
        budget.tick()
        if gi == len(groups):
            if len(out) >= cap:
                raise EnumerationBudgetError("candidate budget exhausted")
            out.add(combined)
            return
        cands, count = groups[gi]

        def pick(start: int, left: int, vmask: int, comb: int) -> None:
            if left == 0:
                rec(gi + 1, vmask, comb)
                return
            for ci in range(start, len(cands)):
                c = cands[ci]
                cv = c & vmask_all
                if cv & vmask:
                    continue
                pick(ci + 1, left - 1, vmask | cv, comb | c)

        pick(0, count, used_vmask, combined)

    rec(0, 0, 0)
    all_isomorphic = len(groups) == 1 and canon_keys[0] is not None
    if all_isomorphic:
        return sorted(out, key=lambda m: (bin(m).count("1"), m))
    return _minimal_elements(out)


def _component_pattern(h: Digraph, comp: list[int]):
    vmap = {v: i for i, v in enumerate(comp)}
    arcs = []
    arc_origin = []
    for i, (t, hd) in enumerate(h.arcs):
        if t in vmap and hd in vmap:
            arcs.append((vmap[t], vmap[hd]))
            arc_origin.append(i)
    return Digraph(len(comp), tuple(arcs)), vmap, arc_origin


def host_digraph(g: Digraph, host: HostSubdigraph) -> Digraph:
    """The host subdigraph as a standalone digraph (vertices relabeled densely)."""
    return subdigraph(g, host.vertices, host.arc_indices)[0]
