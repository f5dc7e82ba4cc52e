"""Large q-kernels: sets whose closed out-neighborhood covers much of D.

Measuring a q-kernel Q by |N+[Q]| instead of |Q| turns the minimization
problems on their head.  The constructions here:

* a greedy acyclic-inducing set of size at least n/(max_out+1);
* a greedy maximal independent set covering at least half the vertices,
  grown by always picking a vertex with out-degree >= in-degree inside the
  untouched remainder (such a vertex always exists, since within any digraph
  the degree sums agree);
* a 3-kernel with |N+[Q]| >= n/3: either the base quasikernel already covers
  a third, or the greedy half-covering set of D restricted to the part not
  dominated by it does, and sits within distance 3 of everything;
* a quasikernel covering any prescribed acyclic-inducing set A, namely the
  kernel of a maximal acyclic superset of A;
* a quasikernel with |N+[Q]| >= n^(1/3), combining the pieces above with the
  set of vertices that belong to at least one quasikernel.

Cube-root thresholds are compared exactly via integer cubes; no floats.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .digraph import (
    Digraph,
    PreconditionError,
    _bits,
    _mask,
    _set,
    closed_neighborhood,
    closed_out_neighborhood,
    induced_subdigraph,
    open_out_neighborhood,
)
from .kernels import check_q_kernel, is_acyclic, kernel_of_acyclic, quasikernel


def greedy_acyclic_set(D: Digraph) -> frozenset[int]:
    """A set A with D[A] acyclic and |A|*(max_out+1) >= n.

    Repeatedly adds the least vertex outside N+[A]; such a vertex has no
    in-arc from A, so it can close no cycle, and the loop only stops once
    N+[A] swallows everything.
    """
    amask = 0
    covered = 0
    n = D.n
    full = D.full_mask
    while covered != full:
        v = (full & ~covered & -(full & ~covered)).bit_length() - 1
        amask |= 1 << v
        covered |= (1 << v) | D.out_masks[v]
    A = _set(amask)
    H, _ = induced_subdigraph(D, A)
    if not is_acyclic(H):
        raise RuntimeError("internal error: greedy acyclic set induced a cycle")
    max_out = max((D.out_degree(v) for v in range(n)), default=0)
    if n and len(A) * (max_out + 1) < n:
        raise RuntimeError("internal error: greedy acyclic set too small")
    return A


def greedy_half_covering_mis(D: Digraph) -> frozenset[int]:
    """A maximal independent set S with 2|N+[S]| >= n.

    Grows S from the untouched set T = V - N[S], always taking the least
    vertex whose out-degree inside D[T] is at least its in-degree; the
    invariant 2|N+[S]| >= |N[S]| holds after every step.
    """
    smask = 0
    n = D.n
    full = D.full_mask
    touched = 0  # N[S]
    while touched != full:
        t = full & ~touched
        pick = -1
        for v in _bits(t):
            if (D.out_masks[v] & t).bit_count() >= (D.in_masks[v] & t).bit_count():
                pick = v
                break
        if pick < 0:
            raise RuntimeError("internal error: no vertex with out >= in inside remainder")
        smask |= 1 << pick
        touched |= (1 << pick) | D.und_masks[pick]
        S = _set(smask)
        if 2 * len(closed_out_neighborhood(D, S)) < len(closed_neighborhood(D, S)):
            raise RuntimeError("internal error: half-covering invariant broke")
    S = _set(smask)
    if n and 2 * len(closed_out_neighborhood(D, S)) < n:
        raise RuntimeError("internal error: final cover below half")
    return S


def three_kernel_large(D: Digraph) -> tuple[frozenset[int], int]:
    """(Q, q) with Q a verified q-kernel, q in {2, 3}, and 3|N+[Q]| >= n.

    If the deterministic quasikernel already covers a third, return it with
    q=2.  Otherwise the greedy half-covering MIS of D restricted to
    T = V - N+(Q0) covers at least (n - |N+(Q0)|)/2 >= n/3 and every vertex
    is within 3 of it.
    """
    n = D.n
    q0 = quasikernel(D)
    if 3 * len(closed_out_neighborhood(D, q0)) >= n:
        return q0, 2
    T = sorted(set(range(n)) - open_out_neighborhood(D, q0))
    H, old = induced_subdigraph(D, T)
    S = frozenset(old[v] for v in greedy_half_covering_mis(H))
    if not check_q_kernel(D, S, 3).ok:
        raise RuntimeError("internal error: constructed set is not a 3-kernel")
    if 3 * len(closed_out_neighborhood(D, S)) < n:
        raise RuntimeError("internal error: 3-kernel covers less than a third")
    return S, 3


def quasikernel_covering(D: Digraph, A: Iterable[int]) -> frozenset[int]:
    """A quasikernel Q with A inside N+[Q]; requires D[A] acyclic.

    Extend A to a maximal acyclic-inducing S by adding least-index vertices,
    then take the kernel of D[S]: the kernel dominates S within one arc and
    every vertex off S has an in-neighbor in S.
    """
    A = frozenset(A)
    H, _ = induced_subdigraph(D, A)
    if not is_acyclic(H):
        raise PreconditionError("A does not induce an acyclic subgraph")
    S = set(A)
    for v in range(D.n):
        if v in S:
            continue
        Hv, _ = induced_subdigraph(D, S | {v})
        if is_acyclic(Hv):
            S.add(v)
    Hs, old = induced_subdigraph(D, S)
    Q = frozenset(old[v] for v in kernel_of_acyclic(Hs))
    if D.n and not check_q_kernel(D, Q, 2).ok:
        raise RuntimeError("internal error: covering construction is not a quasikernel")
    if not A <= closed_out_neighborhood(D, Q):
        raise RuntimeError("internal error: covering construction misses A")
    return Q


def _independent_set_masks(und_masks: tuple[int, ...], avail: int) -> Iterator[int]:
    """All independent subsets of `avail` as masks, each exactly once."""
    stack = [(0, avail)]
    while stack:
        mask, rest = stack.pop()
        yield mask
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            stack.append((mask | low, rest & ~und_masks[v]))


def _covers_within_two(D: Digraph, qmask: int) -> bool:
    cover = qmask
    for _ in range(2):
        acc = 0
        for v in _bits(cover):
            acc |= D.out_masks[v]
        cover |= acc
        if cover == D.full_mask:
            return True
    return cover == D.full_mask


def quasikernel_members(D: Digraph) -> frozenset[int]:
    """Vertices belonging to at least one quasikernel of D.

    Exhaustive over independent sets; exponential, intended for small n.
    """
    members = 0
    for mask in _independent_set_masks(D.und_masks, D.full_mask):
        if mask and _covers_within_two(D, mask):
            members |= mask
    if D.n == 0:
        return frozenset()
    return _set(members)


def _quasikernel_containing(D: Digraph, y: int) -> frozenset[int]:
    """Least (by size, then lexicographically) quasikernel containing y."""
    allowed = sorted(_bits(D.full_mask & ~(D.und_masks[y] | (1 << y))))
    ybit = 1 << y
    for k in range(len(allowed) + 1):
        for combo in combinations(allowed, k):
            mask = ybit | _mask(combo)
            ok = True
            for v in combo:
                if D.und_masks[v] & mask & ~(1 << v):
                    ok = False
                    break
            if ok and _covers_within_two(D, mask):
                return _set(mask)
    raise RuntimeError(f"internal error: vertex {y} is in no quasikernel")


def large_quasikernel(D: Digraph) -> frozenset[int]:
    """A quasikernel Q with |N+[Q]|^3 >= n, verified before return.

    Let X be the vertices in no quasikernel.  If (n-|X|)^3 <= n^2, some
    vertex outside X has out-degree d with (d+1)^3 >= n, and any quasikernel
    through it is large.  Otherwise work in D' = D - X: either a vertex of
    D' has large out-degree there, or the greedy acyclic set A of D' has
    |A|^3 >= n and the covering quasikernel over A is large.

    Exponential through quasikernel_members; intended for small n.
    """
    n = D.n
    if n == 0:
        return frozenset()
    members = quasikernel_members(D)
    x_count = n - len(members)
    if (n - x_count) ** 3 <= n * n:
        y = min(members, key=lambda v: (-D.out_degree(v), v))
        if (D.out_degree(y) + 1) ** 3 < n:
            raise RuntimeError("internal error: no high-out-degree quasikernel member")
        Q = _quasikernel_containing(D, y)
    else:
        H, old = induced_subdigraph(D, members)
        best = min(range(H.n), key=lambda v: (-H.out_degree(v), v))
        if (H.out_degree(best) + 1) ** 3 >= n:
            Q = _quasikernel_containing(D, old[best])
        else:
            A = frozenset(old[v] for v in greedy_acyclic_set(H))
            if len(A) ** 3 < n:
                raise RuntimeError("internal error: greedy acyclic set smaller than n^(1/3)")
            Q = quasikernel_covering(D, A)
    if len(closed_out_neighborhood(D, Q)) ** 3 < n:
        raise RuntimeError("internal error: large quasikernel misses the cube-root bound")
    if not check_q_kernel(D, Q, 2).ok:
        raise RuntimeError("internal error: large quasikernel is not a quasikernel")
    return Q


def pendant_blowup(D: Digraph, k: int) -> Digraph:
    """Attach k fresh out-leaves to every vertex of D.

    The result has n*(k+1) vertices: originals keep their labels, and vertex
    v gains leaves n + v*k .. n + v*k + k - 1.  Minimum quasikernels of the
    blown-up digraph force large coverage in D, which is what the
    small-implies-large consistency check exercises.
    """
    if k < 1:
        raise PreconditionError(f"pendant count must be at least 1, got {k}")
    n = D.n
    arcs = list(D.arcs)
    for v in range(n):
        arcs.extend((v, n + v * k + j) for j in range(k))
    return Digraph(n * (k + 1), arcs, _validated=True)
