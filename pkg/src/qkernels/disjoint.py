"""Disjoint q-kernels in digraphs without small source sets.

An (r-1)-source set (a nonempty S, |S| <= r-1, with no arcs entering it)
blocks r pairwise-disjoint q-kernels outright, since any q-kernel must use a
vertex of S.  Conversely, when no such set exists, r disjoint kernels of
controlled radii can be built by recursion on r:

* r = 2: the deterministic quasikernel Q2, plus a quasikernel of D - Q2,
  which reaches back into Q2 in one extra arc and so is a 3-kernel.
* r > 2: first destroy every proper (r-2)-pseudo-source set by completing
  the arcs among its in-neighborhood (pseudo_source_completion); the result
  D' admits no (r-2)-pseudo-source sets, at the price of shortening paths by
  at most 2(r-2)-1.  Pick the quasikernel Q_r of D', collapse D' through
  Q_r into its square (square_through), recurse at r-1 there, and lift:
  each level doubles distances and the completion costs 2(r-2)-1 more.

The resulting radii form the beta vector: beta^(2) = (3, 2) and
beta_i^(r) = 2*(beta_i^(r-1) + r - 2) for i < r, beta_r^(r) = 2r - 3, with
every entry below 2^(r+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .digraph import (
    Digraph,
    PreconditionError,
    _bits,
    _mask,
    induced_subdigraph,
    is_independent,
    is_source_free,
    dependent_arc,
)
from .kernels import check_q_kernel, quasikernel


@dataclass(frozen=True)
class BetaVector:
    """Reach radii (beta_1, ..., beta_r) for r disjoint kernels."""

    r: int
    values: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]


def beta_vector(r: int) -> BetaVector:
    """The radius vector for r disjoint kernels, cross-checked two ways.

    Computed by the recursion and verified against the closed form
    (7*2^(r-2)-2r, 3*2^(r-1)-2r, (4i-3)*2^(r-i)-2r for i >= 3), and against
    the uniform cap 2^(r+1).
    """
    if r < 2:
        raise PreconditionError(f"need r >= 2, got {r}")
    values = (3, 2)
    for k in range(3, r + 1):
        values = tuple(2 * (b + k - 2) for b in values) + (2 * k - 3,)

    def closed_form(i: int) -> int:
        if i == 1:
            return 7 * 2 ** (r - 2) - 2 * r
        if i == 2:
            return 3 * 2 ** (r - 1) - 2 * r
        return (4 * i - 3) * 2 ** (r - i) - 2 * r

    for i, b in enumerate(values, 1):
        if b != closed_form(i):
            raise RuntimeError(f"internal error: beta recursion disagrees with closed form at i={i}")
        if b > 2 ** (r + 1):
            raise RuntimeError(f"internal error: beta_{i} exceeds 2^(r+1)")
    return BetaVector(r, values)


def find_source_sets(D: Digraph, max_size: int) -> list[frozenset[int]]:
    """All nonempty S with |S| <= max_size and no arcs entering S.

    Enumerated by size, then lexicographically.
    """
    if max_size < 1:
        raise PreconditionError(f"need max_size >= 1, got {max_size}")
    found = []
    for k in range(1, min(max_size, D.n) + 1):
        for combo in combinations(range(D.n), k):
            m = _mask(combo)
            incoming = 0
            for v in combo:
                incoming |= D.in_masks[v]
            if not (incoming & ~m):
                found.append(frozenset(combo))
    return found


def _is_pseudo_source_mask(D: Digraph, m: int) -> bool:
    incoming = 0
    for v in _bits(m):
        incoming |= D.in_masks[v]
    for v in _bits(incoming & ~m):
        if D.in_masks[v] & ~m:
            return False
    return True


def _proper_submasks(m: int) -> Iterator[int]:
    # Nonempty strict submasks of m.
    sub = (m - 1) & m
    while sub:
        yield sub
        sub = (sub - 1) & m


def find_pseudo_source_sets(D: Digraph, max_size: int, proper_only: bool = False) -> list[frozenset[int]]:
    """All nonempty S, |S| <= max_size, whose outside in-neighbors have all
    their own in-neighbors inside S.

    Every source set qualifies vacuously.  With proper_only, sets containing
    a smaller pseudo-source set (of any size) are filtered out.
    """
    if max_size < 1:
        raise PreconditionError(f"need max_size >= 1, got {max_size}")
    found = []
    for k in range(1, min(max_size, D.n) + 1):
        for combo in combinations(range(D.n), k):
            m = _mask(combo)
            if not _is_pseudo_source_mask(D, m):
                continue
            if proper_only and any(_is_pseudo_source_mask(D, sub) for sub in _proper_submasks(m)):
                continue
            found.append(frozenset(combo))
    return found


def square_through(D: Digraph, Q: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
    """Collapse D through an independent set Q: the digraph on V - Q with an
    arc u -> w whenever D has it directly or via a middle vertex of Q.

    Returns (H, old_of_new); distances in D at most double those in H.
    """
    Q = frozenset(Q)
    if not is_independent(D, Q):
        raise PreconditionError(f"Q is not independent: arc {dependent_arc(D, Q)}")
    qmask = _mask(Q)
    old = tuple(v for v in range(D.n) if not (qmask >> v) & 1)
    new_of_old = {o: i for i, o in enumerate(old)}
    arcs = set()
    for u in old:
        targets = D.out_masks[u] & ~qmask
        for mid in _bits(D.out_masks[u] & qmask):
            targets |= D.out_masks[mid] & ~qmask
        targets &= ~(1 << u)
        for w in _bits(targets):
            arcs.add((new_of_old[u], new_of_old[w]))
    return Digraph(len(old), sorted(arcs), _validated=True), old


def pseudo_source_completion(D: Digraph, r: int) -> Digraph:
    """Destroy all (r-2)-pseudo-source sets by completing N-(S) cliques.

    For every proper (r-2)-pseudo-source set S of D, all arcs between
    distinct vertices of N-(S) are added, simultaneously for all such S.
    Requires r >= 3 and no (r-1)-source sets; the output is re-checked to
    have no (r-2)-pseudo-source sets.
    """
    if r < 3:
        raise PreconditionError(f"completion needs r >= 3, got {r}")
    blockers = find_source_sets(D, r - 1)
    if blockers:
        raise PreconditionError(
            f"digraph has an (r-1)-source set {sorted(blockers[0])} with r={r}")
    extra: set[tuple[int, int]] = set()
    for S in find_pseudo_source_sets(D, r - 2, proper_only=True):
        incoming = 0
        for v in S:
            incoming |= D.in_masks[v]
        ring = list(_bits(incoming & ~_mask(S)))
        for u in ring:
            for w in ring:
                if u != w and not D.has_arc(u, w):
                    extra.add((u, w))
    H = Digraph(D.n, D.arcs + tuple(sorted(extra)), _validated=True)
    if find_pseudo_source_sets(H, r - 2):
        raise RuntimeError("internal error: completion left an (r-2)-pseudo-source set")
    return H


def three_kernel_disjoint_from(D: Digraph, Q: Iterable[int]) -> frozenset[int]:
    """A 3-kernel of D disjoint from a given independent set Q.

    Take a quasikernel of D - Q.  Source-freeness gives every vertex of Q an
    in-neighbor outside Q, so one extra arc reaches Q.
    """
    Q = frozenset(Q)
    if not is_source_free(D):
        raise PreconditionError("digraph has a source")
    if not is_independent(D, Q):
        raise PreconditionError(f"Q is not independent: arc {dependent_arc(D, Q)}")
    H, old = induced_subdigraph(D, set(range(D.n)) - Q)
    result = frozenset(old[v] for v in quasikernel(H))
    if result & Q:
        raise RuntimeError("internal error: disjointness lost")
    if D.n and not check_q_kernel(D, result, 3).ok:
        raise RuntimeError("internal error: quasikernel of D - Q is not a 3-kernel of D")
    return result


def disjoint_qkernels(D: Digraph, r: int) -> list[tuple[frozenset[int], int]]:
    """r pairwise-disjoint sets, the i-th a verified beta_i^(r)-kernel of D.

    Requires no (r-1)-source sets (checked, witness reported).  The r = 2
    base is the (3, 2) pair; deeper levels run completion, the quasikernel
    of the completed digraph, the square through it, and the lift.
    """
    if r < 2:
        raise PreconditionError(f"need r >= 2, got {r}")
    blockers = find_source_sets(D, r - 1)
    if blockers:
        raise PreconditionError(
            f"digraph has an (r-1)-source set {sorted(blockers[0])} with r={r}")
    betas = beta_vector(r)
    if r == 2:
        q2 = quasikernel(D)
        q1 = three_kernel_disjoint_from(D, q2)
        out = [(q1, 3), (q2, 2)]
    else:
        completed = pseudo_source_completion(D, r)
        qr = quasikernel(completed)
        squared, old = square_through(completed, qr)
        inner = disjoint_qkernels(squared, r - 1)
        out = [(frozenset(old[v] for v in Qi), betas[i]) for i, (Qi, _) in enumerate(inner)]
        out.append((qr, betas[r - 1]))
    used: set[int] = set()
    for (Qi, radius), claimed in zip(out, betas):
        if radius != claimed:
            raise RuntimeError("internal error: radius ledger out of sync")
        if Qi & used:
            raise RuntimeError("internal error: kernels overlap")
        used |= Qi
        if D.n and not check_q_kernel(D, Qi, radius).ok:
            raise RuntimeError(
                f"internal error: set {sorted(Qi)} is not a {radius}-kernel")
    return out
