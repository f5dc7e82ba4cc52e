"""Seeded random digraph corpora shared by the property tests."""

from qkernels.digraph import Digraph, distances_from
from qkernels.generators import _seeded_rng


def random_bipartite_with_girth(seed: int, n: int, girth: int,
                                extra_attempts: int | None = None) -> Digraph:
    """Source-free bipartite digraph on n vertices with directed girth >= girth.

    Base: a union of even directed cycles of length >= girth covering an even
    prefix of the vertices, with the remaining vertices attached as pendant
    out-leaves.  Random cross arcs are then added one at a time, rejecting
    any arc that closes a directed cycle shorter than the girth target.
    """
    min_len = girth + (girth % 2)
    if min_len < 4:
        min_len = 4
    if n < min_len:
        raise ValueError(f"need n >= {min_len}")
    rng = _seeded_rng("bipartite-girth", seed, n, girth)
    base = n if n % 2 == 0 else n - 1
    parts = []
    left = base
    while left >= min_len:
        if left < 2 * min_len:
            parts.append(left)
            left = 0
        else:
            pick = min_len + 2 * rng.randrange(0, (left - 2 * min_len) // 2 + 1)
            parts.append(pick)
            left -= pick
    if left:
        parts[-1] += left

    arcs = []
    color = [0] * n
    start = 0
    for length in parts:
        for i in range(length):
            arcs.append((start + i, start + (i + 1) % length))
            color[start + i] = i % 2
        start += length
    for v in range(start, n):
        parent = rng.randrange(v)
        arcs.append((parent, v))
        color[v] = color[parent] ^ 1

    D = Digraph(n, arcs, _validated=True)
    attempts = extra_attempts if extra_attempts is not None else 2 * n
    for _ in range(attempts):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or color[u] == color[v] or D.has_arc(u, v):
            continue
        # the new arc u->v closes cycles of length dist(v, u) + 1
        back = distances_from(D, [v])[u]
        if back + 1 < girth:
            continue
        D = Digraph(n, D.arcs + ((u, v),), _validated=True)
    return D
