"""q-kernel certification and quasikernel constructions.

A set Q is a q-kernel of a digraph D when Q is independent and every vertex
of D can be reached from Q by a directed path of length at most q.  1-kernels
are the classical kernels, 2-kernels are quasikernels.  Kernels need not
exist (a directed triangle has none), but every digraph has a quasikernel,
and the recursion implemented here builds one: pick a pivot vertex x, solve
D minus the closed out-neighborhood of x, and reuse that solution if it
already reaches into N-(x), otherwise adjoin x itself.  The same recursion,
with the pivot chosen adversarially, yields quasikernels that avoid the
out-neighborhood of any prescribed vertex or independent set, which is what
the small-quasikernel bounds are built from.

Every constructor re-certifies its output before returning and raises
RuntimeError if certification fails; a failure would indicate a bug, never
a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .digraph import (
    Digraph,
    PreconditionError,
    _bits,
    _mask,
    _set,
    dependent_arc,
    is_independent,
)


@dataclass(frozen=True)
class KernelCertificate:
    """Audit record for a verified q-kernel: the set, q, and witness distances."""

    q: int
    members: tuple[int, ...]
    distances: tuple[float, ...]

    @property
    def ok(self) -> bool:
        return True


@dataclass(frozen=True)
class KernelViolation:
    """Names the first condition a candidate q-kernel fails."""

    reason: str  # "not-independent" | "empty" | "too-far"
    q: int
    members: tuple[int, ...]
    arc: tuple[int, int] | None = None
    vertex: int | None = None
    distance: float | None = None

    @property
    def ok(self) -> bool:
        return False

    def message(self) -> str:
        if self.reason == "not-independent":
            return f"set is not independent: arc {self.arc} joins two members"
        if self.reason == "empty":
            return "empty set cannot reach any vertex"
        return (f"vertex {self.vertex} is at distance "
                f"{'inf' if self.distance == float('inf') else int(self.distance)}"
                f" > {self.q}")


def check_q_kernel(D: Digraph, Q: Iterable[int], q: int) -> KernelCertificate | KernelViolation:
    """Certify Q as a q-kernel of D, or name the violated condition.

    Distances are recomputed from scratch, so the certificate is independent
    of however Q was constructed.
    """
    if q < 1:
        raise PreconditionError(f"radius q must be at least 1, got {q}")
    members = tuple(sorted(set(Q)))
    qmask = _mask(members)
    if qmask & ~D.full_mask:
        raise PreconditionError("candidate set contains out-of-range vertices")
    arc = dependent_arc(D, members)
    if arc is not None:
        return KernelViolation("not-independent", q, members, arc=arc)
    if not members:
        if D.n == 0:
            return KernelCertificate(q, members, ())
        return KernelViolation("empty", q, members, vertex=0, distance=float("inf"))
    dist = [float("inf")] * D.n
    for v in members:
        dist[v] = 0
    cover = qmask
    frontier = qmask
    d = 0
    while frontier and d < q:
        acc = 0
        for v in _bits(frontier):
            acc |= D.out_masks[v]
        frontier = acc & ~cover
        cover |= frontier
        d += 1
        for v in _bits(frontier):
            dist[v] = d
    if cover != D.full_mask:
        # Walk further to report the true distance of the nearest offender.
        offender = min(_bits(D.full_mask & ~cover))
        while frontier:
            acc = 0
            for v in _bits(frontier):
                acc |= D.out_masks[v]
            frontier = acc & ~cover
            cover |= frontier
            d += 1
            for v in _bits(frontier):
                dist[v] = d
        return KernelViolation("too-far", q, members,
                               vertex=offender, distance=dist[offender])
    return KernelCertificate(q, members, tuple(dist))


def is_q_kernel(D: Digraph, Q: Iterable[int], q: int) -> bool:
    return check_q_kernel(D, Q, q).ok


def _certified(D: Digraph, Q: frozenset[int], q: int, what: str) -> frozenset[int]:
    result = check_q_kernel(D, Q, q)
    if not result.ok:
        raise RuntimeError(f"internal error: {what} failed certification: {result.message()}")
    return Q


def kernel_of_acyclic(D: Digraph) -> frozenset[int]:
    """The unique kernel of an acyclic digraph.

    Processing vertices in topological order, a vertex joins the kernel
    exactly when none of its in-neighbors already has; members then reach
    every non-member along one arc.  Rejects cyclic input.
    """
    order = _topological_order(D)
    if order is None:
        raise PreconditionError("digraph is not acyclic")
    kmask = 0
    for v in order:
        if not (D.in_masks[v] & kmask):
            kmask |= 1 << v
    K = _set(kmask)
    return _certified(D, K, 1, "kernel of acyclic digraph")


def _topological_order(D: Digraph) -> list[int] | None:
    indeg = [len(a) for a in D.in_adj]
    ready = sorted(v for v in range(D.n) if indeg[v] == 0)
    order: list[int] = []
    while ready:
        v = ready.pop()
        order.append(v)
        for w in D.out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    if len(order) != D.n:
        return None
    return order


def is_acyclic(D: Digraph) -> bool:
    return _topological_order(D) is not None


def _quasikernel_mask(out_masks: tuple[int, ...], in_masks: tuple[int, ...], alive: int) -> int:
    """Quasikernel of the subgraph induced on `alive`, pivot = least vertex."""
    if alive == 0:
        return 0
    xbit = alive & -alive
    x = xbit.bit_length() - 1
    rest = alive & ~(out_masks[x] | xbit)
    q = _quasikernel_mask(out_masks, in_masks, rest)
    if q & in_masks[x]:
        return q
    return q | xbit


def quasikernel(D: Digraph) -> frozenset[int]:
    """A quasikernel of D, built by the pivot recursion; always exists.

    Deterministic: the pivot is the least-index remaining vertex at every
    level, so equal digraphs give equal quasikernels.
    """
    Q = _set(_quasikernel_mask(D.out_masks, D.in_masks, D.full_mask))
    if D.n == 0:
        return Q
    return _certified(D, Q, 2, "quasikernel")


def quasikernel_avoiding(D: Digraph, x: int) -> frozenset[int]:
    """A quasikernel Q with Q disjoint from N+(x) and Q meeting N-[x].

    Runs one explicit level of the pivot recursion at x: solve
    D - N+[x]; if the solution misses N-(x), adjoin x itself.
    """
    if not (0 <= x < D.n):
        raise PreconditionError(f"vertex {x} out of range for n={D.n}")
    xbit = 1 << x
    alive = D.full_mask & ~(D.out_masks[x] | xbit)
    q = _quasikernel_mask(D.out_masks, D.in_masks, alive)
    if not (q & D.in_masks[x]):
        q |= xbit
    Q = _set(q)
    _certified(D, Q, 2, "avoiding quasikernel")
    if q & D.out_masks[x]:
        raise RuntimeError("internal error: avoiding quasikernel meets N+(x)")
    if not (q & (D.in_masks[x] | xbit)):
        raise RuntimeError("internal error: avoiding quasikernel misses N-[x]")
    return Q


def quasikernel_avoiding_set(D: Digraph, X: Iterable[int]) -> frozenset[int]:
    """A quasikernel disjoint from N+(X), for an independent set X.

    Generalizes quasikernel_avoiding: solve D - N+[X], then adjoin every
    member of X that the sub-solution does not already reach in one step.
    With X empty this is exactly quasikernel(D).
    """
    xmask = _mask(X)
    if xmask & ~D.full_mask:
        raise PreconditionError("avoidance set contains out-of-range vertices")
    if not is_independent(D, _set(xmask)):
        raise PreconditionError(
            f"avoidance set is not independent: arc {dependent_arc(D, _set(xmask))}")
    navoid = xmask
    for v in _bits(xmask):
        navoid |= D.out_masks[v]
    q = _quasikernel_mask(D.out_masks, D.in_masks, D.full_mask & ~navoid)
    for v in _bits(xmask):
        if not (q & D.in_masks[v]):
            q |= 1 << v
    Q = _set(q)
    if D.n > 0:
        _certified(D, Q, 2, "set-avoiding quasikernel")
    nplus_x = (navoid & ~xmask)
    if q & nplus_x:
        raise RuntimeError("internal error: set-avoiding quasikernel meets N+(X)")
    return Q
