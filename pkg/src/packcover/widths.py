"""Exact directed pathwidth and cutwidth with checkable certificates.

Both widths are computed by an exact dynamic program over vertex subsets: the
cost charged when a prefix set S has been placed depends only on S, so

    value(S) = max(cost(S), min over v in S of value(S - v))

is exact. For cutwidth, cost(S) counts arcs (with multiplicity) leaving S.
For directed pathwidth, cost(S) counts vertices of S with an arc to the
complement; minimizing that boundary over orderings equals the bag-definition
pathwidth, and `layout_to_decomposition` turns the optimal ordering into a
bag sequence that the validator accepts at the same width.
"""

from dataclasses import dataclass

import numpy as np

from .digraph import Digraph

PATHWIDTH_CAP = 18
CUTWIDTH_CAP = 20

_PY_COST_CAP = 12  # below this, plain Python beats numpy setup cost


@dataclass(frozen=True)
class Layout:
    """A total ordering of the vertices."""

    order: tuple[int, ...]


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def width(self) -> int:
        if not self.bags:
            return 0
        return max(len(b) for b in self.bags) - 1


@dataclass(frozen=True)
class WidthCertificate:
    kind: str  # "pathwidth" | "cutwidth"
    value: int
    witness: object  # PathDecomposition | Layout


@dataclass(frozen=True)
class DecompositionCheck:
    ok: bool
    condition: int | None = None  # 1, 2 or 3; None when ok
    detail: str = ""

    def __bool__(self):
        return self.ok


def _check_permutation(g: Digraph, layout: Layout) -> list[int]:
    """Position of each vertex in the layout; raises on non-permutations."""
    if sorted(layout.order) != list(range(g.n)):
        raise ValueError("layout is not a permutation of the vertex set")
    pos = [0] * g.n
    for i, v in enumerate(layout.order):
        pos[v] = i
    return pos


def layout_cutwidth(g: Digraph, layout: Layout) -> int:
    """Max over prefix cuts of the number of arcs (with multiplicity) crossing forward."""
    pos = _check_permutation(g, layout)
    if g.n <= 1:
        return 0
    # diff[i] accumulates arcs crossing the cut between positions i-1 and i
    diff = [0] * (g.n + 1)
    for t, h in g.arcs:
        if pos[t] < pos[h]:
            diff[pos[t] + 1] += 1
            diff[pos[h] + 1] -= 1
    best = cur = 0
    for i in range(1, g.n):
        cur += diff[i]
        if cur > best:
            best = cur
    return best


def layout_vertex_separation(g: Digraph, layout: Layout) -> int:
    """Max over prefixes S of |{u in S with an arc into the complement}|."""
    pos = _check_permutation(g, layout)
    if g.n <= 1:
        return 0
    last_out = list(pos)  # u sits on the boundary of prefixes pos[u] .. last_out[u]-1
    for t, h in g.arcs:
        if pos[h] > last_out[t]:
            last_out[t] = pos[h]
    diff = [0] * (g.n + 1)
    for u in range(g.n):
        if last_out[u] > pos[u]:
            diff[pos[u]] += 1
            diff[last_out[u]] -= 1
    best = cur = 0
    for i in range(g.n):
        cur += diff[i]
        if cur > best:
            best = cur
    return best


def layout_to_decomposition(g: Digraph, layout: Layout) -> PathDecomposition:
    """Bags induced by a layout: v_i plus every earlier vertex that still has
    an arc to v_i or beyond. Width equals the layout's vertex separation."""
    pos = _check_permutation(g, layout)
    if g.n == 0:
        return PathDecomposition(())
    last_out = list(pos)
    for t, h in g.arcs:
        if pos[h] > last_out[t]:
            last_out[t] = pos[h]
    bags = []
    for i in range(g.n):
        bags.append(frozenset(u for u in range(g.n) if pos[u] <= i <= last_out[u]))
    return PathDecomposition(tuple(bags))


def validate_path_decomposition(g: Digraph, pd: PathDecomposition) -> DecompositionCheck:
    """Check the three bag-sequence conditions; report the first violation.

    (1) bags cover every vertex; (2) every arc (u,v) has u in some bag at or
    after a bag containing v; (3) each vertex occupies a contiguous bag range.
    """
    for b in pd.bags:
        for v in b:
            if not (0 <= v < g.n):
                raise ValueError(f"bag entry {v} out of range for n={g.n}")
    occurrences: list[list[int]] = [[] for _ in range(g.n)]
    for i, b in enumerate(pd.bags):
        for v in b:
            occurrences[v].append(i)
    for v in range(g.n):
        if not occurrences[v]:
            return DecompositionCheck(False, 1, f"vertex {v} is in no bag")
    for t, h in g.arcs:
        if max(occurrences[t]) < min(occurrences[h]):
            return DecompositionCheck(
                False, 2, f"arc ({t},{h}): every bag with {t} precedes every bag with {h}"
            )
    for v in range(g.n):
        occ = occurrences[v]
        if occ[-1] - occ[0] + 1 != len(occ):
            return DecompositionCheck(False, 3, f"vertex {v} occurs in a non-contiguous bag range")
    return DecompositionCheck(True)


# ---------------------------------------------------------------------------
# Subset dynamic program
# ---------------------------------------------------------------------------

def _pathwidth_costs(g: Digraph) -> list[int]:
    n = g.n
    size = 1 << n
    out_mask = [0] * n
    for t, h in g.arcs:
        out_mask[t] |= 1 << h
    if n <= _PY_COST_CAP:
        full = size - 1
        cost = [0] * size
        for s in range(1, size):
            rest = full & ~s
            c = 0
            t = s
            while t:
                b = t & -t
                if out_mask[b.bit_length() - 1] & rest:
                    c += 1
                t ^= b
            cost[s] = c
        return cost
    subsets = np.arange(size, dtype=np.int64)
    total = np.zeros(size, dtype=np.int32)
    for u in range(n):
        in_s = ((subsets >> u) & 1).astype(bool)
        escapes = (np.bitwise_and(np.bitwise_not(subsets), out_mask[u]) != 0)
        total += (in_s & escapes)
    return total.tolist()


def _cutwidth_costs(g: Digraph) -> list[int]:
    n = g.n
    size = 1 << n
    pair_mult = {}
    for a in g.arcs:
        pair_mult[a] = pair_mult.get(a, 0) + 1
    if n <= _PY_COST_CAP:
        cost = [0] * size
        for (t, h), mult in pair_mult.items():
            tb, hb = 1 << t, 1 << h
            for s in range(size):
                if (s & tb) and not (s & hb):
                    cost[s] += mult
        return cost
    subsets = np.arange(size, dtype=np.int64)
    total = np.zeros(size, dtype=np.int32)
    for (t, h), mult in pair_mult.items():
        crossing = ((subsets >> t) & 1) & (((subsets >> h) & 1) ^ 1)
        total += (mult * crossing).astype(np.int32)
    return total.tolist()


def _min_layout(n: int, cost: list[int]) -> tuple[int, tuple[int, ...]]:
    """Exact min over orderings of the max prefix cost; smallest-id tie-break."""
    if n == 0:
        return 0, ()
    size = 1 << n
    value = [0] * size
    for s in range(1, size):
        t = s
        best = None
        while t:
            b = t & -t
            val = value[s ^ b]
            if best is None or val < best:
                best = val
                if best == 0:
                    break
            t ^= b
        c = cost[s]
        value[s] = c if c > best else best
    order_rev = []
    s = size - 1
    while s:
        target = value[s]
        t = s
        chosen = None
        while t:
            b = t & -t
            v = b.bit_length() - 1
            prev = value[s ^ b]
            if (cost[s] if cost[s] > prev else prev) == target:
                chosen = v
                break  # bits iterate from the lowest, so this is the smallest id
            t ^= b
        order_rev.append(chosen)
        s ^= 1 << chosen
    return value[size - 1], tuple(reversed(order_rev))


def cutwidth(g: Digraph) -> WidthCertificate:
    """Exact cutwidth with a witness layout attaining it."""
    if g.n > CUTWIDTH_CAP:
        raise ValueError(f"cutwidth is capped at n <= {CUTWIDTH_CAP}, got {g.n}")
    value, order = _min_layout(g.n, _cutwidth_costs(g))
    return WidthCertificate("cutwidth", value, Layout(order))


def directed_pathwidth(g: Digraph) -> WidthCertificate:
    """Exact directed pathwidth with a validating bag-sequence witness."""
    if g.n > PATHWIDTH_CAP:
        raise ValueError(f"directed pathwidth is capped at n <= {PATHWIDTH_CAP}, got {g.n}")
    value, order = _min_layout(g.n, _pathwidth_costs(g))
    pd = layout_to_decomposition(g, Layout(order))
    assert pd.width() == value, "internal: witness width disagrees with DP value"
    return WidthCertificate("pathwidth", value, pd)
