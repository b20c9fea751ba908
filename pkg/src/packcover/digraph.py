"""Loop-free multi-digraphs: SCCs, contractions, predicates, and seeded generators.

Vertices are dense integer ids 0..n-1. Arcs are ordered (tail, head) pairs kept
as an explicit sequence, so parallel arcs are distinct elements and arc-level
bookkeeping (deletion, disjointness) is element-wise. Loops are rejected.
"""

import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product

Arc = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    """Immutable multi-digraph on vertices 0..n-1; parallel arcs allowed, loops are not."""

    n: int
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        arcs = tuple((int(t), int(h)) for t, h in self.arcs)
        for t, h in arcs:
            if not (0 <= t < self.n) or not (0 <= h < self.n):
                raise ValueError(f"arc ({t},{h}) out of range for n={self.n}")
            if t == h:
                raise ValueError(f"loop arc ({t},{h}) is not allowed")
        object.__setattr__(self, "arcs", arcs)

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_multiset(self) -> Counter:
        return Counter(self.arcs)

    @cached_property
    def successor_sets(self) -> tuple[tuple[int, ...], ...]:
        """Distinct out-neighbors of each vertex, sorted."""
        succ = [set() for _ in range(self.n)]
        for t, h in self.arcs:
            succ[t].add(h)
        return tuple(tuple(sorted(s)) for s in succ)

    @cached_property
    def predecessor_sets(self) -> tuple[tuple[int, ...], ...]:
        pred = [set() for _ in range(self.n)]
        for t, h in self.arcs:
            pred[h].add(t)
        return tuple(tuple(sorted(s)) for s in pred)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        """Distinct vertices adjacent by an arc in either direction."""
        nb = [set() for _ in range(self.n)]
        for t, h in self.arcs:
            nb[t].add(h)
            nb[h].add(t)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def out_degrees(self) -> tuple[int, ...]:
        """Out-degree with multiplicity."""
        deg = [0] * self.n
        for t, _ in self.arcs:
            deg[t] += 1
        return tuple(deg)

    @cached_property
    def in_degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for _, h in self.arcs:
            deg[h] += 1
        return tuple(deg)

    @cached_property
    def arc_indices_by_pair(self) -> dict[Arc, tuple[int, ...]]:
        """Arc positions grouped by (tail, head) pair."""
        by_pair: dict[Arc, list[int]] = {}
        for i, a in enumerate(self.arcs):
            by_pair.setdefault(a, []).append(i)
        return {a: tuple(ix) for a, ix in by_pair.items()}

    @cached_property
    def out_arc_indices(self) -> tuple[tuple[int, ...], ...]:
        """Arc positions grouped by tail vertex."""
        out = [[] for _ in range(self.n)]
        for i, (t, _) in enumerate(self.arcs):
            out[t].append(i)
        return tuple(tuple(ix) for ix in out)

    def __str__(self):
        return f"Digraph(n={self.n}, m={len(self.arcs)})"


@dataclass(frozen=True)
class SccPartition:
    """Strongly-connected components in a topological order of the condensation."""

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.components)


def scc(g: Digraph) -> SccPartition:
    """Strongly-connected components (iterative Tarjan).

    Components are listed in a topological order of the condensation: for any
    arc (u, v) with u, v in different components, u's component comes first.
    Singleton vertices form their own components.
    """
    n = g.n
    adj = g.successor_sets
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, ptr = work[-1]
            if ptr < len(adj[v]):
                work[-1] = (v, ptr + 1)
                w = adj[v][ptr]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                work.pop()
                if work:
                    pv = work[-1][0]
                    if low[v] < low[pv]:
                        low[pv] = low[v]
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(tuple(sorted(comp)))

    comps.reverse()  # Tarjan emits sinks first; reversed is condensation-topological
    component_of = [0] * n
    for i, comp in enumerate(comps):
        for v in comp:
            component_of[v] = i
    return SccPartition(tuple(comps), tuple(component_of))


def is_strongly_connected(g: Digraph) -> bool:
    """True iff g has at least one vertex and a single SCC."""
    return g.n >= 1 and scc(g).count == 1


def has_directed_cycle(g: Digraph) -> bool:
    """True iff some SCC has two or more vertices (loops are impossible)."""
    return any(len(c) >= 2 for c in scc(g).components)


def is_s_semicomplete(g: Digraph, s: int) -> bool:
    """Every vertex is adjacent to at least n-1-s distinct other vertices."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    need = g.n - 1 - s
    return all(len(nb) >= need for nb in g.neighbor_sets)


# ---------------------------------------------------------------------------
# Contractions
# ---------------------------------------------------------------------------

def is_contractible_arc(g: Digraph, a: Arc) -> bool:
    """True iff a=(u,v) is the only arc with head v, or the only arc with tail u.

    Multiplicity counts: a parallel copy of the arc disqualifies both readings.
    """
    a = (int(a[0]), int(a[1]))
    if a not in g.arc_multiset:
        raise ValueError(f"arc {a} is not in the digraph")
    u, v = a
    return g.in_degrees[v] == 1 or g.out_degrees[u] == 1


def _merge_map(n: int, merged: frozenset[int]) -> tuple[int, ...]:
    """Old-id -> new-id map merging `merged` into one vertex, keeping ids dense.

    The merged vertex takes the slot of min(merged); remaining vertices keep
    their relative order.
    """
    rep = min(merged)
    vmap = [0] * n
    nxt = 0
    for v in range(n):
        if v in merged and v != rep:
            continue
        vmap[v] = nxt
        nxt += 1
    for v in merged:
        vmap[v] = vmap[rep]
    return tuple(vmap)


def contract_butterfly(g: Digraph, a: Arc) -> tuple[Digraph, tuple[int, ...]]:
    """Contract a contractible arc; returns (digraph, old->new vertex map).

    Loops arising from the merge are deleted; parallel arcs are kept.
    """
    if not is_contractible_arc(g, a):
        raise ValueError(f"arc {tuple(a)} is not contractible")
    u, v = int(a[0]), int(a[1])
    vmap = _merge_map(g.n, frozenset((u, v)))
    arcs = []
    for t, h in g.arcs:
        nt, nh = vmap[t], vmap[h]
        if nt != nh:
            arcs.append((nt, nh))
    return Digraph(g.n - 1, tuple(arcs)), vmap


def contract_strong(g: Digraph, set_s) -> tuple[Digraph, tuple[int, ...]]:
    """Contract a strongly-connected vertex set to one vertex.

    Returns (digraph, old->new vertex map). Arcs between the set and the rest
    keep their multiplicities; internal arcs become loops and are deleted.
    """
    set_s = frozenset(int(v) for v in set_s)
    if not set_s:
        raise ValueError("cannot contract an empty vertex set")
    if not set_s <= frozenset(range(g.n)):
        raise ValueError("vertex set out of range")
    if not is_strongly_connected(induced(g, set_s)):
        raise ValueError("vertex set does not induce a strongly-connected subdigraph")
    vmap = _merge_map(g.n, set_s)
    arcs = []
    for t, h in g.arcs:
        nt, nh = vmap[t], vmap[h]
        if nt != nh:
            arcs.append((nt, nh))
    return Digraph(g.n - len(set_s) + 1, tuple(arcs)), vmap


# ---------------------------------------------------------------------------
# Subdigraph plumbing
# ---------------------------------------------------------------------------

def induced_with_map(g: Digraph, vs) -> tuple[Digraph, dict[int, int], tuple[int, ...]]:
    """Induced subdigraph on `vs` plus (old->new vertex map, new->old arc index map)."""
    kept = sorted(set(int(v) for v in vs))
    if kept and not (0 <= kept[0] and kept[-1] < g.n):
        raise ValueError("vertex set out of range")
    vmap = {v: i for i, v in enumerate(kept)}
    arcs = []
    arc_origin = []
    for i, (t, h) in enumerate(g.arcs):
        if t in vmap and h in vmap:
            arcs.append((vmap[t], vmap[h]))
            arc_origin.append(i)
    return Digraph(len(kept), tuple(arcs)), vmap, tuple(arc_origin)


def induced(g: Digraph, vs) -> Digraph:
    """Induced subdigraph, vertices relabeled densely in sorted order."""
    return induced_with_map(g, vs)[0]


def delete_vertices(g: Digraph, vs) -> Digraph:
    drop = set(int(v) for v in vs)
    return induced(g, (v for v in range(g.n) if v not in drop))


def delete_arcs(g: Digraph, arc_indices) -> Digraph:
    """Delete arcs by position (element-wise, so one copy of a parallel pair can go)."""
    drop = set(int(i) for i in arc_indices)
    for i in drop:
        if not (0 <= i < len(g.arcs)):
            raise ValueError(f"arc index {i} out of range")
    return Digraph(g.n, tuple(a for i, a in enumerate(g.arcs) if i not in drop))


def subdigraph(g: Digraph, vertices, arc_indices) -> tuple[Digraph, dict[int, int]]:
    """Sub-multidigraph on `vertices` using only the listed arc positions.

    Returns (digraph, old->new vertex map). All arc endpoints must lie in
    `vertices`; isolated vertices are kept.
    """
    kept = sorted(set(int(v) for v in vertices))
    vmap = {v: i for i, v in enumerate(kept)}
    arcs = []
    for i in arc_indices:
        t, h = g.arcs[i]
        if t not in vmap or h not in vmap:
            raise ValueError(f"arc index {i} has an endpoint outside the vertex set")
        arcs.append((vmap[t], vmap[h]))
    return Digraph(len(kept), tuple(arcs)), vmap


def disjoint_union(g: Digraph, h: Digraph) -> Digraph:
    """Disjoint union; h's vertex ids are shifted by g.n."""
    off = g.n
    return Digraph(g.n + h.n, g.arcs + tuple((t + off, u + off) for t, u in h.arcs))


# ---------------------------------------------------------------------------
# Named builders
# ---------------------------------------------------------------------------

def directed_cycle(k: int) -> Digraph:
    """Directed cycle on k >= 2 vertices (k = 2 gives the two-cycle)."""
    if k < 2:
        raise ValueError("a directed cycle needs at least 2 vertices")
    return Digraph(k, tuple((i, (i + 1) % k) for i in range(k)))


def transitive_tournament(k: int) -> Digraph:
    return Digraph(k, tuple((i, j) for i in range(k) for j in range(i + 1, k)))


def complete_digraph(k: int) -> Digraph:
    """Arcs in both directions between every vertex pair."""
    return Digraph(k, tuple((i, j) for i in range(k) for j in range(k) if i != j))


def single_vertex() -> Digraph:
    return Digraph(1, ())


# ---------------------------------------------------------------------------
# Seeded random generators
# ---------------------------------------------------------------------------

def random_tournament(n: int, seed: int) -> Digraph:
    """Uniformly random orientation of each vertex pair; deterministic per seed."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = random.Random(seed)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, tuple(arcs))


_SSC_RETRIES = 32


def random_s_semicomplete(n: int, s: int, max_multiplicity: int, seed: int) -> Digraph:
    """Random s-semicomplete multi-digraph; deterministic per seed.

    Sampling recipe (artifact-defined, not canonical): start from a random
    tournament; per vertex delete up to s random incident pairs; then sometimes
    add reverse arcs and raise multiplicities up to `max_multiplicity`. The
    s-semicomplete predicate is re-checked before returning; after a bounded
    number of retries the unmodified tournament (always s-semicomplete) is
    returned instead.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    if max_multiplicity < 1:
        raise ValueError("max_multiplicity must be at least 1")
    base = random_tournament(n, seed)
    rng = random.Random((seed, n, s, max_multiplicity).__hash__())
    for _ in range(_SSC_RETRIES):
        orient = {}
        for u in range(n):
            for v in range(u + 1, n):
                orient[(u, v)] = (u, v) if rng.random() < 0.5 else (v, u)
        deleted: set[tuple[int, int]] = set()
        for v in range(n):
            live = [p for p in orient if v in p and p not in deleted]
            for p in rng.sample(live, min(rng.randint(0, s), len(live))):
                deleted.add(p)
        arcs: list[Arc] = []
        for p, (t, h) in orient.items():
            if p in deleted:
                continue
            copies = 1
            if max_multiplicity > 1 and rng.random() < 0.2:
                copies = rng.randint(2, max_multiplicity)
            arcs.extend([(t, h)] * copies)
            if rng.random() < 0.3:
                rev_copies = 1
                if max_multiplicity > 1 and rng.random() < 0.2:
                    rev_copies = rng.randint(2, max_multiplicity)
                arcs.extend([(h, t)] * rev_copies)
        g = Digraph(n, tuple(arcs))
        if is_s_semicomplete(g, s):
            return g
    return base


# ---------------------------------------------------------------------------
# Isomorphism at desk scale
# ---------------------------------------------------------------------------

_ISO_CAP = 9


def _relabel_encoding(g: Digraph, perm: tuple[int, ...]) -> tuple[Arc, ...]:
    return tuple(sorted((perm[t], perm[h]) for t, h in g.arcs))


def _degree_class_perms(g: Digraph):
    """Permutations mapping each (out,in)-degree class onto a fixed position block."""
    keys = [(g.out_degrees[v], g.in_degrees[v]) for v in range(g.n)]
    classes: dict[tuple[int, int], list[int]] = {}
    for v, k in enumerate(keys):
        classes.setdefault(k, []).append(v)
    ordered = sorted(classes.items())
    blocks = []
    offset = 0
    for _, members in ordered:
        blocks.append((members, offset))
        offset += len(members)
    for choice in product(*(permutations(range(len(m))) for m, _ in blocks)):
        perm = [0] * g.n
        for (members, off), ordering in zip(blocks, choice):
            for slot, v in zip(ordering, members):
                perm[v] = off + slot
        yield tuple(perm)


def canonical_form(g: Digraph) -> tuple[int, tuple[Arc, ...]]:
    """Lexicographically smallest arc encoding over degree-respecting relabelings.

    Brute force; intended for desk-scale digraphs (n <= 9).
    """
    if g.n > _ISO_CAP:
        raise ValueError(f"canonical_form supports n <= {_ISO_CAP}, got {g.n}")
    best = None
    for perm in _degree_class_perms(g):
        enc = _relabel_encoding(g, perm)
        if best is None or enc < best:
            best = enc
    return (g.n, best if best is not None else ())


def is_isomorphic(g: Digraph, h: Digraph) -> bool:
    if g.n != h.n or len(g.arcs) != len(h.arcs):
        return False
    if sorted(zip(g.out_degrees, g.in_degrees)) != sorted(zip(h.out_degrees, h.in_degrees)):
        return False
    return canonical_form(g) == canonical_form(h)


def relabel(g: Digraph, perm) -> Digraph:
    """Apply a permutation old-id -> new-id to the vertices."""
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(g.n)):
        raise ValueError("not a permutation")
    return Digraph(g.n, tuple((perm[t], perm[h]) for t, h in g.arcs))
