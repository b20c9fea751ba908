"""Ensemble generation: exhaustive tournaments, iso-deduped sweeps, seeded batches."""

from .digraph import Digraph, canonical_form, random_s_semicomplete


_MASK64 = (1 << 64) - 1


def derive_seed(master: int, index: int) -> int:
    """Counter-based seed split (splitmix64 of master + index).

    Instance i always gets the same seed for a given master, so parallel or
    reordered execution cannot change the sampled ensemble.
    """
    z = (master + index * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def tournament_from_mask(n: int, mask: int) -> Digraph:
    """Tournament whose pair (u,v), u<v, points u->v iff the pair's mask bit is set."""
    arcs = []
    bit = 0
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if (mask >> bit) & 1 else (v, u))
            bit += 1
    return Digraph(n, tuple(arcs))


def all_tournaments(n: int):
    """All 2^(n choose 2) labeled tournaments on n vertices."""
    pairs = n * (n - 1) // 2
    for mask in range(1 << pairs):
        yield tournament_from_mask(n, mask)


def tournaments_up_to_iso(n: int) -> list[Digraph]:
    """One representative per isomorphism class, built by vertex extension."""
    if n < 1:
        return []
    reps = [Digraph(1, ())]
    for k in range(2, n + 1):
        seen = set()
        new_reps = []
        for base in reps:
            for mask in range(1 << (k - 1)):
                arcs = list(base.arcs)
                for j in range(k - 1):
                    arcs.append((j, k - 1) if (mask >> j) & 1 else (k - 1, j))
                cand = Digraph(k, tuple(arcs))
                key = canonical_form(cand)
                if key not in seen:
                    seen.add(key)
                    new_reps.append(cand)
        reps = new_reps
    return reps


def random_semicomplete_batch(count: int, n: int, s: int, max_multiplicity: int,
                              master_seed: int):
    """Yields (instance_id, seed, digraph) deterministically from a master seed."""
    for i in range(count):
        seed = derive_seed(master_seed, i)
        g = random_s_semicomplete(n, s, max_multiplicity, seed)
        yield f"R{i}-n{n}-s{s}", seed, g
