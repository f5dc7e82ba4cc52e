"""Small-quasikernel upper bounds for source-free digraphs.

Three routes to a small quasikernel live here:

* the in/out-degree counting bound on independent sets (every independent
  set has size at most n - delta*n/(delta+Delta));
* the sqrt dichotomy: either some vertex has out-degree at least
  floor(sqrt(n)) and a quasikernel avoiding its out-neighborhood is small,
  or the maximum out-degree is below that and the counting bound already
  caps every independent set at n - sqrt(n);
* in bipartite digraphs with no directed 2- or 4-cycles, a quasikernel of
  size strictly below n/2 (the trivial half bound, made strict).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .digraph import (
    Digraph,
    PreconditionError,
    degree_stats,
    dependent_arc,
    directed_cycle_lengths,
    find_bipartition,
    is_independent,
    is_source_free,
    open_out_neighborhood,
)
from .kernels import check_q_kernel, quasikernel, quasikernel_avoiding, quasikernel_avoiding_set


def independence_upper_bound(n: int, min_in: int, max_out: int) -> Fraction:
    """Exact rational cap n - min_in*n/(min_in+max_out) on independent sets.

    Counting arcs from outside an independent set I into I: each member
    needs min_in of them, each outsider supplies at most max_out.
    """
    if min_in < 0 or max_out < 0:
        raise PreconditionError("degrees must be nonnegative")
    if min_in + max_out == 0:
        raise PreconditionError("degree bound needs min_in + max_out >= 1")
    return Fraction(n) - Fraction(min_in * n, min_in + max_out)


def small_quasikernel(D: Digraph) -> frozenset[int]:
    """A quasikernel of size at most n - floor(sqrt(n)); needs D source-free.

    Tight on the directed 2-cycle and 4-cycle.  Case split: with a vertex x
    of out-degree >= floor(sqrt(n)), a quasikernel avoiding N+(x) fits the
    bound; otherwise every independent set does.
    """
    stats = degree_stats(D)
    if stats.sources:
        raise PreconditionError(
            f"digraph has a source (vertex {min(stats.sources)}); bound needs source-free input")
    n = D.n
    root = math.isqrt(n)
    x = max(range(n), key=lambda v: (D.out_degree(v), -v), default=None)
    if x is not None and root >= 1 and D.out_degree(x) >= root:
        Q = quasikernel_avoiding(D, x)
    else:
        Q = quasikernel(D)
    if len(Q) > n - root:
        raise RuntimeError(
            f"internal error: small quasikernel has size {len(Q)} > {n - root}")
    return Q


@dataclass(frozen=True)
class GeneralizedSmallReport:
    """Outcome of the avoidance route through an independent set X.

    claimed_bound is n - |N+(X)|; achieved is the actual size.  The
    degree_route_bound records what the in-degree refinement of the sqrt
    argument guarantees for this digraph (n - sqrt(min_in * n) + min_in),
    for comparison only.
    """

    quasikernel: frozenset[int]
    n: int
    avoided: frozenset[int]
    claimed_bound: int
    achieved: int
    min_in_degree: int
    degree_route_bound: float


def small_quasikernel_generalized(D: Digraph, X: Iterable[int]) -> GeneralizedSmallReport:
    """Quasikernel of size at most n - |N+(X)| for an independent set X.

    With X a single vertex of maximum out-degree this is exactly the first
    case of the sqrt bound; larger independent sets can avoid more.
    """
    X = frozenset(X)
    if not is_independent(D, X):
        raise PreconditionError(f"X is not independent: arc {dependent_arc(D, X)}")
    avoided = open_out_neighborhood(D, X)
    Q = quasikernel_avoiding_set(D, X)
    claimed = D.n - len(avoided)
    if len(Q) > claimed:
        raise RuntimeError("internal error: avoidance bound missed")
    delta = degree_stats(D).min_in if D.n else 0
    degree_route = D.n - math.sqrt(delta * D.n) + delta
    return GeneralizedSmallReport(
        quasikernel=Q,
        n=D.n,
        avoided=avoided,
        claimed_bound=claimed,
        achieved=len(Q),
        min_in_degree=delta,
        degree_route_bound=degree_route,
    )


def bipartite_girth5_quasikernel(D: Digraph) -> frozenset[int]:
    """Quasikernel of size strictly below n/2 in a source-free bipartite
    digraph with no directed 2-cycles or 4-cycles.

    Cases: (i) one part is strictly smaller, take it; (ii) the digraph is a
    disjoint union of directed cycles, necessarily of even length >= 6, and
    per cycle x1..x_{2L} the set {x1} u {x_{2i} : 2 <= i <= L-1} works;
    (iii) otherwise some vertex u has every out-neighbor of in-degree >= 2,
    and the part of u minus u itself is a quasikernel.
    """
    if D.n == 0:
        raise PreconditionError("empty digraph has no quasikernel below n/2")
    if not is_source_free(D):
        raise PreconditionError("digraph has a source")
    B = find_bipartition(D)
    if B is None:
        raise PreconditionError("digraph is not bipartite")
    short = directed_cycle_lengths(D, min(4, D.n))
    if short:
        raise PreconditionError(f"directed {min(short)}-cycle present")
    n = D.n
    if 2 * len(B.u) < n:
        Q = B.u
    elif 2 * len(B.v) < n:
        Q = B.v
    elif all(D.out_degree(v) == 1 and D.in_degree(v) == 1 for v in range(n)):
        Q = _cycle_union_quasikernel(D)
    else:
        u = _vertex_with_covered_outs(D)
        if u is None:
            raise RuntimeError(
                "internal error: neither a union of cycles nor a vertex whose "
                "out-neighbors all have in-degree >= 2")
        Q = (B.u - {u}) if u in B.u else (B.v - {u})
    result = check_q_kernel(D, Q, 2)
    if not result.ok or 2 * len(Q) >= n:
        raise RuntimeError("internal error: bipartite girth-5 quasikernel failed its bound")
    return frozenset(Q)


def _vertex_with_covered_outs(D: Digraph) -> int | None:
    # Least vertex all of whose out-neighbors have in-degree at least 2.
    for u in range(D.n):
        if all(D.in_degree(w) >= 2 for w in D.out_adj[u]):
            return u
    return None


def _cycle_union_quasikernel(D: Digraph) -> frozenset[int]:
    # Every in/out-degree is 1, so D is a disjoint union of directed cycles.
    seen = [False] * D.n
    Q: set[int] = set()
    for start in range(D.n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        w = D.out_adj[start][0]
        while w != start:
            seen[w] = True
            cycle.append(w)
            w = D.out_adj[w][0]
        length = len(cycle)
        if length % 2 or length < 6:
            raise RuntimeError(f"internal error: cycle of length {length} survived the girth check")
        half = length // 2
        Q.add(cycle[0])
        Q.update(cycle[2 * i - 1] for i in range(2, half))
    return frozenset(Q)
