"""Named digraph families used as tight examples and negative controls.

Every family is deterministic: the same parameters always produce the same
arc set.  Where a family exists to certify a specific structural property
(no small source sets, a prescribed proper pseudo-source set, regularity),
that property is asserted at generation time for small parameters, so a
broken generator fails loudly instead of silently weakening downstream
tests.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .digraph import (
    Digraph,
    PreconditionError,
    disjoint_union as _union,
    find_bipartition,
    is_source_free,
    scc_diameter,
    strongly_connected_components,
)
from .bipartite import cycle_tails_lower_bound
from .disjoint import find_pseudo_source_sets, find_source_sets
from .large import pendant_blowup, _independent_set_masks, _covers_within_two

__all__ = [
    "generate",
    "family_catalog",
    "FamilyInfo",
    "pendant_blowup",
]


def _seeded_rng(*parts: object) -> random.Random:
    digest = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def cycle(l: int) -> Digraph:
    """Directed cycle C_l; l = 2 is the digon."""
    if l < 2:
        raise PreconditionError(f"cycle length must be at least 2, got {l}")
    return Digraph(l, [(i, (i + 1) % l) for i in range(l)], _validated=True)


def cycles_union(lengths: list[int]) -> Digraph:
    if not lengths:
        raise PreconditionError("need at least one cycle length")
    return _union(*(cycle(l) for l in lengths))


def digon_star(s: int) -> Digraph:
    """Hub 0 joined to s leaves by digons; source-free, no 2-source sets for s >= 2."""
    if s < 1:
        raise PreconditionError(f"need at least one leaf, got {s}")
    arcs = []
    for i in range(1, s + 1):
        arcs.append((0, i))
        arcs.append((i, 0))
    D = Digraph(s + 1, arcs, _validated=True)
    if s >= 2 and find_source_sets(D, 2):
        raise RuntimeError("internal error: digon star grew a 2-source set")
    return D


def bidirected_clique(k: int) -> Digraph:
    """All ordered pairs on k vertices; min in-degree k-1, independent sets are singletons."""
    if k < 2:
        raise PreconditionError(f"need k >= 2, got {k}")
    return Digraph(k, [(u, v) for u in range(k) for v in range(k) if u != v],
                   _validated=True)


def tripartite_blowup(delta: int) -> Digraph:
    """Three classes of size delta with all arcs cycling class i to class i+1.

    Its only quasikernels are the three classes; asserted by enumeration for
    delta <= 3.
    """
    if delta < 1:
        raise PreconditionError(f"need delta >= 1, got {delta}")
    classes = [range(i * delta, (i + 1) * delta) for i in range(3)]
    arcs = []
    for i in range(3):
        for u in classes[i]:
            for v in classes[(i + 1) % 3]:
                arcs.append((u, v))
    D = Digraph(3 * delta, arcs, _validated=True)
    if delta <= 3:
        parts = {frozenset(c) for c in classes}
        quasis = set()
        for mask in _independent_set_masks(D.und_masks, D.full_mask):
            if mask and _covers_within_two(D, mask):
                quasis.add(frozenset(v for v in range(D.n) if (mask >> v) & 1))
        if quasis != parts:
            raise RuntimeError("internal error: blow-up has unexpected quasikernels")
    return D


def bidirected_path(k: int) -> Digraph:
    """Path on k vertices with both arc directions; for odd k = 2r+1 the odd
    positions form a proper pseudo-source set whose component has diameter 2r."""
    if k < 2:
        raise PreconditionError(f"need k >= 2, got {k}")
    arcs = []
    for i in range(k - 1):
        arcs.append((i, i + 1))
        arcs.append((i + 1, i))
    D = Digraph(k, arcs, _validated=True)
    if k % 2 == 1 and k <= 13:
        odds = frozenset(range(1, k, 2))
        proper = find_pseudo_source_sets(D, (k - 1) // 2, proper_only=True)
        if odds not in proper:
            raise RuntimeError("internal error: odd positions are not a proper pseudo-source set")
        comp = strongly_connected_components(D)
        if len(comp) != 1 or scc_diameter(D, comp[0]) != k - 1:
            raise RuntimeError("internal error: bidirected path diameter is off")
    return D


def eulerian_tournament(n: int) -> Digraph:
    """Rotational tournament: i beats i+1 .. i+(n-1)/2; in = out everywhere."""
    if n < 3 or n % 2 == 0:
        raise PreconditionError(f"need odd n >= 3, got {n}")
    half = (n - 1) // 2
    arcs = [(i, (i + j) % n) for i in range(n) for j in range(1, half + 1)]
    D = Digraph(n, arcs, _validated=True)
    if any(D.in_degree(v) != D.out_degree(v) for v in range(n)):
        raise RuntimeError("internal error: rotational tournament is not regular")
    return D


def cycle_with_tails(q: int, l: int) -> Digraph:
    """Even cycle of length 2l with a directed path of length q-2 off every
    second vertex; n = q*l.  Forces U-side q-kernels of size >= n/q."""
    return cycle_tails_lower_bound(q, l)


def leafed_cycle(l: int) -> Digraph:
    """Even cycle of length l with one out-leaf on every second vertex."""
    if l < 4 or l % 2:
        raise PreconditionError(f"need even cycle length >= 4, got {l}")
    arcs = [(i, (i + 1) % l) for i in range(l)]
    half = l // 2
    for i in range(half):
        arcs.append((2 * i + 1, l + i))
    return Digraph(l + half, arcs, _validated=True)


def tournament_pendants(k: int, with_hub: bool = False) -> Digraph:
    """Source-free core on k vertices, each with k-1 pendant out-leaves.

    k odd >= 3 uses the rotational tournament; k = 2 falls back to the digon
    (no source-free tournament on two vertices exists); other k are refused.
    Every independent set X has |N+(X)| <= 2k while the k(k-1) leaves are
    independent, so avoidance arguments cannot beat n - sqrt(n) here.
    With with_hub, a new vertex w receives an arc from every leaf and points
    at every core vertex, making the leaf set a minimal quasikernel.
    """
    if k == 2:
        core = cycle(2)
    elif k >= 3 and k % 2 == 1:
        core = eulerian_tournament(k)
    else:
        raise PreconditionError(
            f"core size must be 2 or an odd number >= 3, got {k}")
    n = k
    arcs = list(core.arcs)
    leaves = []
    for v in range(k):
        for _ in range(k - 1):
            arcs.append((v, n))
            leaves.append(n)
            n += 1
    if with_hub:
        w = n
        arcs.extend((leaf, w) for leaf in leaves)
        arcs.extend((w, v) for v in range(k))
        n += 1
    D = Digraph(n, arcs, _validated=True)
    if not is_source_free(D):
        raise RuntimeError("internal error: pendant construction should be source-free")
    return D


def random_unicyclic(seed: int, n: int, cycle_len: int) -> Digraph:
    """Seeded unicyclic bipartite digraph: an even cycle plus random attachments.

    Vertices cycle_len..n-1 are appended one at a time, each receiving one
    arc from a uniformly chosen earlier vertex, so every in-degree is 1 and
    the underlying graph stays connected and bipartite.
    """
    if cycle_len < 4 or cycle_len % 2:
        raise PreconditionError(f"need even cycle length >= 4, got {cycle_len}")
    if n < cycle_len:
        raise PreconditionError(f"need n >= cycle length, got n={n} < {cycle_len}")
    rng = _seeded_rng("unicyclic", seed, n, cycle_len)
    arcs = [(i, (i + 1) % cycle_len) for i in range(cycle_len)]
    for v in range(cycle_len, n):
        arcs.append((rng.randrange(v), v))
    D = Digraph(n, arcs, _validated=True)
    if any(D.in_degree(v) != 1 for v in range(n)) or find_bipartition(D) is None:
        raise RuntimeError("internal error: random unicyclic digraph malformed")
    return D


@dataclass(frozen=True)
class FamilyInfo:
    name: str
    params: tuple[tuple[str, str], ...]  # (name, meaning)
    certified: str
    example: str  # CLI-style "key=value,..." accepted by generate()


_CATALOG: tuple[FamilyInfo, ...] = (
    FamilyInfo("cycle", (("l", "cycle length >= 2"),),
               "minimum q-kernel has size ceil(l/(q+1))", "l=6"),
    FamilyInfo("disjoint_union", (("cycles", "'+'-separated cycle lengths"),),
               "minimum quasikernel is the sum of the per-cycle minima", "cycles=2+4"),
    FamilyInfo("digon_star", (("s", "number of digon leaves >= 1"),),
               "no 2-source sets for s >= 2, yet deleting the independent leaf set strands the hub",
               "s=2"),
    FamilyInfo("bidirected_clique", (("k", "order >= 2"),),
               "minimum in-degree k-1 and every nonempty independent set is a single vertex",
               "k=3"),
    FamilyInfo("tripartite_blowup", (("delta", "class size >= 1"),),
               "only quasikernels are the three classes, each of size n/3", "delta=2"),
    FamilyInfo("bidirected_path", (("k", "path order >= 2"),),
               "for odd k=2r+1 the odd positions are a proper pseudo-source set; diameter 2r",
               "k=5"),
    FamilyInfo("eulerian_tournament", (("n", "odd order >= 3"),),
               "regular tournament; every quasikernel is one vertex covering (n+1)/2", "n=5"),
    FamilyInfo("cycle_with_tails", (("q", "radius >= 3"), ("l", "half cycle length >= 1")),
               "q-kernels inside U need at least l = n/q vertices", "q=3,l=3"),
    FamilyInfo("leafed_cycle", (("l", "even cycle length >= 4"),),
               "for l=6, 5-kernels inside U need 2 = (2/9)n vertices", "l=6"),
    FamilyInfo("tournament_pendants", (("k", "core size: 2 or odd >= 3"),
                                       ("with_hub", "optional 0/1 hub vertex")),
               "independent sets reach n - k while every independent X has |N+(X)| <= 2k",
               "k=3"),
    FamilyInfo("random_unicyclic", (("seed", "any integer"), ("n", "order"),
                                    ("cycle", "even cycle length >= 4")),
               "unicyclic and bipartite: every in-degree 1, one even cycle",
               "seed=7,n=8,cycle=4"),
    FamilyInfo("pendant_blowup", (("k", "out-leaves per vertex >= 1"),),
               "k fresh out-leaves on every vertex of a base digraph (CLI: needs --input)",
               "k=1"),
)


def family_catalog() -> tuple[FamilyInfo, ...]:
    """Machine-readable list of families, their parameters, and properties."""
    return _CATALOG


_BUILDERS = {
    "cycle": lambda p: cycle(int(p["l"])),
    "disjoint_union": lambda p: cycles_union([int(x) for x in str(p["cycles"]).split("+")]),
    "digon_star": lambda p: digon_star(int(p["s"])),
    "bidirected_clique": lambda p: bidirected_clique(int(p["k"])),
    "tripartite_blowup": lambda p: tripartite_blowup(int(p["delta"])),
    "bidirected_path": lambda p: bidirected_path(int(p["k"])),
    "eulerian_tournament": lambda p: eulerian_tournament(int(p["n"])),
    "cycle_with_tails": lambda p: cycle_with_tails(int(p["q"]), int(p["l"])),
    "leafed_cycle": lambda p: leafed_cycle(int(p["l"])),
    "tournament_pendants": lambda p: tournament_pendants(
        int(p["k"]), bool(int(p.get("with_hub", 0)))),
    "random_unicyclic": lambda p: random_unicyclic(
        int(p["seed"]), int(p["n"]), int(p["cycle"])),
}


def generate(family: str, base: Digraph | None = None, **params: object) -> Digraph:
    """Build a catalog family from keyword parameters.

    pendant_blowup additionally needs `base`, the digraph to decorate.
    """
    if family == "pendant_blowup":
        if base is None:
            raise PreconditionError("pendant_blowup needs a base digraph")
        return pendant_blowup(base, int(params["k"]))  # type: ignore[arg-type]
    if family not in _BUILDERS:
        known = ", ".join(sorted(set(_BUILDERS) | {"pendant_blowup"}))
        raise PreconditionError(f"unknown family {family!r}; known: {known}")
    try:
        return _BUILDERS[family](params)
    except KeyError as missing:
        raise PreconditionError(f"family {family!r} needs parameter {missing}") from None
