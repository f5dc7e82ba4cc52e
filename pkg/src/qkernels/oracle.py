"""Brute-force oracles and the conjecture sweep harness over small digraphs.

Ground truth for every size bound in the package: minimum q-kernels by
ascending-cardinality search, maximum-coverage quasikernels by independent
set enumeration, and exhaustive or seeded-random streams of labeled
digraphs.  The sweep harness evaluates a named inequality on every digraph
in scope, collecting counterexamples (expected: none) and equality
witnesses, and merges chunked work deterministically so reports are byte
identical regardless of worker count.

All searches are desk-scale by design: exhaustive enumeration is refused
above n = 5 (2^20 labeled digraphs), random mode is capped at n = 14.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterator

from .digraph import (
    Digraph,
    PreconditionError,
    _bits,
    _mask,
    Bipartition,
    degree_stats,
    digraph_from_text,
    digraph_to_text,
    directed_cycle_lengths,
    find_bipartition,
    is_source_free,
)
from .large import _covers_within_two, _independent_set_masks, quasikernel_members
from .disjoint import find_source_sets
from .bipartite import unicyclic_structure

EXHAUSTIVE_MAX_N = 5
RANDOM_MAX_N = 14


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------

def min_qkernel(D: Digraph, q: int, restrict: frozenset[int] | None = None
                ) -> tuple[int, frozenset[int]] | None:
    """Minimum-size q-kernel, with the lexicographically least witness.

    Ascending-cardinality search over subsets of `restrict` (default: all
    vertices), stopping at the first hit, so the cost is bounded by the
    answer.  Returns None when no q-kernel exists within the restriction.
    """
    if q < 1:
        raise PreconditionError(f"radius q must be at least 1, got {q}")
    pool = sorted(restrict) if restrict is not None else list(range(D.n))
    if D.n == 0:
        return (0, frozenset())
    for k in range(0, len(pool) + 1):
        for combo in combinations(pool, k):
            mask = _mask(combo)
            ok = True
            for v in combo:
                if D.und_masks[v] & mask & ~(1 << v):
                    ok = False
                    break
            if ok and _covers_within(D, mask, q):
                return (k, frozenset(combo))
    return None


def _covers_within(D: Digraph, qmask: int, q: int) -> bool:
    if qmask == 0:
        return D.n == 0
    cover = qmask
    frontier = qmask
    for _ in range(q):
        acc = 0
        for v in _bits(frontier):
            acc |= D.out_masks[v]
        frontier = acc & ~cover
        if not frontier:
            break
        cover |= frontier
        if cover == D.full_mask:
            return True
    return cover == D.full_mask


def _best_quasikernel_by(D: Digraph, value_of: Callable[[int, int], int]
                         ) -> tuple[int, frozenset[int]]:
    """Maximize value_of(qmask, coverage_size) over all quasikernels.

    Ties go to the lexicographically least member tuple.  The empty digraph
    scores value_of(0, 0) on the empty quasikernel.
    """
    if D.n == 0:
        return value_of(0, 0), frozenset()
    best_val: int | None = None
    best_members: tuple[int, ...] | None = None
    for mask in _independent_set_masks(D.und_masks, D.full_mask):
        if not mask or not _covers_within_two(D, mask):
            continue
        cover = mask
        for v in _bits(mask):
            cover |= D.out_masks[v]
        val = value_of(mask, cover.bit_count())
        members = tuple(_bits(mask))
        if best_val is None or val > best_val or (val == best_val and members < best_members):
            best_val, best_members = val, members
    if best_val is None:
        raise RuntimeError("internal error: digraph without any quasikernel")
    return best_val, frozenset(best_members)


def max_covering_quasikernel(D: Digraph) -> tuple[int, frozenset[int]]:
    """Maximum |N+[Q]| over quasikernels Q, with the least witness."""
    return _best_quasikernel_by(D, lambda mask, cov: cov)


def max_quasikernel_surplus(D: Digraph) -> tuple[int, frozenset[int]]:
    """Maximum of 2|N+[Q]| - |Q| over quasikernels Q.

    The quantity is at least n exactly when some quasikernel has
    |N+(Q)| >= (n - |Q|)/2.
    """
    return _best_quasikernel_by(D, lambda mask, cov: 2 * cov - mask.bit_count())


def max_acyclic_set_size(D: Digraph) -> int:
    """Largest A with D[A] acyclic, by descending-cardinality brute force."""
    n = D.n
    for k in range(n, -1, -1):
        for combo in combinations(range(n), k):
            if _induced_acyclic(D, _mask(combo)):
                return k
    return 0


def _induced_acyclic(D: Digraph, alive: int) -> bool:
    changed = True
    while alive and changed:
        changed = False
        for v in _bits(alive):
            if not (D.in_masks[v] & alive):
                alive &= ~(1 << v)
                changed = True
    return alive == 0


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def arc_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Canonical ordering of the n(n-1) possible arcs; bit i of an arc-set
    integer refers to arc_pairs(n)[i]."""
    return tuple((u, v) for u in range(n) for v in range(n) if u != v)


def digraph_from_arc_mask(n: int, mask: int, pairs: tuple[tuple[int, int], ...] | None = None
                          ) -> Digraph:
    if pairs is None:
        pairs = arc_pairs(n)
    arcs = []
    m = mask
    while m:
        low = m & -m
        arcs.append(pairs[low.bit_length() - 1])
        m ^= low
    return Digraph(n, arcs, _validated=True)


@dataclass(frozen=True)
class DigraphFilter:
    """Conjunction of digraph predicates used to narrow a sweep."""

    source_free: bool = False
    bipartite: bool = False
    min_girth: int | None = None        # no directed cycle shorter than this
    min_in_degree: int | None = None
    exact_min_in_degree: int | None = None
    no_source_sets: int | None = None   # no s-source sets for any s <= this

    def admits(self, D: Digraph) -> bool:
        if self.source_free and not is_source_free(D):
            return False
        if self.min_in_degree is not None or self.exact_min_in_degree is not None:
            delta = degree_stats(D).min_in if D.n else 0
            if self.min_in_degree is not None and delta < self.min_in_degree:
                return False
            if self.exact_min_in_degree is not None and delta != self.exact_min_in_degree:
                return False
        if self.bipartite and find_bipartition(D) is None:
            return False
        if self.min_girth is not None and self.min_girth > 2:
            if directed_cycle_lengths(D, min(self.min_girth - 1, D.n)):
                return False
        if self.no_source_sets is not None and find_source_sets(D, self.no_source_sets):
            return False
        return True

    def merged_with(self, other: "DigraphFilter") -> "DigraphFilter":
        return DigraphFilter(
            source_free=self.source_free or other.source_free,
            bipartite=self.bipartite or other.bipartite,
            min_girth=_max_opt(self.min_girth, other.min_girth),
            min_in_degree=_max_opt(self.min_in_degree, other.min_in_degree),
            exact_min_in_degree=self.exact_min_in_degree
            if self.exact_min_in_degree is not None else other.exact_min_in_degree,
            no_source_sets=_max_opt(self.no_source_sets, other.no_source_sets),
        )

    def describe(self) -> tuple[str, ...]:
        out = []
        if self.source_free:
            out.append("source-free")
        if self.bipartite:
            out.append("bipartite")
        if self.min_girth is not None:
            out.append(f"girth>={self.min_girth}")
        if self.min_in_degree is not None:
            out.append(f"min-in-degree>={self.min_in_degree}")
        if self.exact_min_in_degree is not None:
            out.append(f"min-in-degree={self.exact_min_in_degree}")
        if self.no_source_sets is not None:
            out.append(f"no-source-sets<={self.no_source_sets}")
        return tuple(out)


def _max_opt(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def parse_filters(spec: str) -> DigraphFilter:
    """Parse a comma-separated filter list, e.g.
    'source-free,bipartite,girth>=6,min-in-degree>=2,no-source-sets<=2'."""
    flt = DigraphFilter()
    if not spec:
        return flt
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token == "source-free":
            flt = replace(flt, source_free=True)
        elif token == "bipartite":
            flt = replace(flt, bipartite=True)
        elif token.startswith("girth>="):
            flt = replace(flt, min_girth=int(token.split(">=", 1)[1]))
        elif token.startswith("min-in-degree>="):
            flt = replace(flt, min_in_degree=int(token.split(">=", 1)[1]))
        elif token.startswith("min-in-degree="):
            flt = replace(flt, exact_min_in_degree=int(token.split("=", 1)[1]))
        elif token.startswith("no-source-sets<="):
            flt = replace(flt, no_source_sets=int(token.split("<=", 1)[1]))
        else:
            raise PreconditionError(f"unknown filter {token!r}")
    return flt


def _wants_in_degrees(flt: DigraphFilter) -> bool:
    # Positive in-degree everywhere is implied by any of these, so masks
    # missing an in-arc for some head can be skipped before construction.
    return (flt.source_free
            or (flt.min_in_degree or 0) >= 1
            or (flt.exact_min_in_degree or 0) >= 1
            or (flt.no_source_sets or 0) >= 1)


def _head_bit_masks(n: int, pairs: tuple[tuple[int, int], ...]) -> tuple[int, ...]:
    head = [0] * n
    for i, (_, v) in enumerate(pairs):
        head[v] |= 1 << i
    return tuple(head)


def _sampled_digraph(seed: int, n: int, attempt: int, arc_prob: float,
                     pairs: tuple[tuple[int, int], ...]) -> Digraph:
    from .generators import _seeded_rng
    rng = _seeded_rng("digraph", seed, n, attempt)
    arcs = [pair for pair in pairs if rng.random() < arc_prob]
    return Digraph(n, arcs, _validated=True)


def enumerate_digraphs(n: int, flt: DigraphFilter | None = None, *,
                       samples: int | None = None, seed: int | None = None,
                       arc_prob: float = 0.5) -> Iterator[Digraph]:
    """Stream labeled digraphs on n vertices.

    Exhaustive mode (samples=None): all 2^(n(n-1)) digraphs in ascending
    arc-set-integer order; refused above n = 5.  Random mode: `samples`
    seeded attempts, each pair drawn independently with probability
    arc_prob; attempts failing the filter are skipped, not replaced, so the
    stream is reproducible and chunkable.
    """
    flt = flt or DigraphFilter()
    pairs = arc_pairs(n)
    if samples is None:
        if n > EXHAUSTIVE_MAX_N:
            raise PreconditionError(
                f"exhaustive enumeration refused for n={n} > {EXHAUSTIVE_MAX_N}")
        head_bits = _head_bit_masks(n, pairs) if _wants_in_degrees(flt) else None
        for mask in range(1 << (n * (n - 1))):
            if head_bits is not None and any(not (mask & hb) for hb in head_bits):
                continue
            D = digraph_from_arc_mask(n, mask, pairs)
            if flt.admits(D):
                yield D
    else:
        if n > RANDOM_MAX_N:
            raise PreconditionError(f"random enumeration refused for n={n} > {RANDOM_MAX_N}")
        if seed is None:
            raise PreconditionError("random mode needs a seed")
        for attempt in range(samples):
            D = _sampled_digraph(seed, n, attempt, arc_prob, pairs)
            if flt.admits(D):
                yield D


def enumerate_unicyclic_bipartite(n: int, min_cycle: int = 4) -> Iterator[tuple[Digraph, Bipartition]]:
    """Every unicyclic bipartite shape on n vertices, one labeling per
    attachment order.

    The cycle takes labels 0..c-1; each later vertex attaches below any
    earlier vertex, which realizes every hanging-forest shape at least once.
    """
    for c in range(min_cycle, n + 1, 2):
        base = [(i, (i + 1) % c) for i in range(c)]
        ranges = [range(v) for v in range(c, n)]
        for parents in product(*ranges):
            arcs = base + [(p, v) for v, p in zip(range(c, n), parents)]
            D = Digraph(n, arcs, _validated=True)
            B = find_bipartition(D)
            if B is None:
                raise RuntimeError("internal error: unicyclic corpus digraph not bipartite")
            yield D, B


# ---------------------------------------------------------------------------
# Conjecture registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Outcome:
    violated: bool
    equality: bool
    value: str
    detail: str = ""


def _eval_small_quasikernel(D: Digraph, params: dict) -> Outcome:
    size, witness = min_qkernel(D, 2)
    return Outcome(violated=2 * size > D.n, equality=2 * size == D.n,
                   value=str(size), detail=f"witness={sorted(witness)}")


def _eval_large_quasikernel(D: Digraph, params: dict) -> Outcome:
    cov, witness = max_covering_quasikernel(D)
    return Outcome(violated=2 * cov < D.n, equality=2 * cov == D.n,
                   value=str(cov), detail=f"witness={sorted(witness)}")


def _eval_small_cycles(D: Digraph, params: dict) -> Outcome:
    q = int(params.get("q", 2))
    lengths = directed_cycle_lengths(D)
    if not lengths:
        raise RuntimeError("internal error: source-free digraph without a cycle")
    bound = max(Fraction(-(-l // (q + 1)), l) for l in lengths) * D.n
    size, _ = min_qkernel(D, q)
    return Outcome(violated=size > bound, equality=size == bound,
                   value=str(size), detail=f"bound={bound}")


def _eval_even_larger(D: Digraph, params: dict) -> Outcome:
    val, witness = max_quasikernel_surplus(D)
    return Outcome(violated=val < D.n, equality=val == D.n,
                   value=str(val), detail=f"witness={sorted(witness)}")


def _eval_sqrt_constructive(D: Digraph, params: dict) -> Outcome:
    import math
    from .small import small_quasikernel
    Q = small_quasikernel(D)  # certifies the quasikernel property itself
    bound = D.n - math.isqrt(D.n)
    return Outcome(violated=len(Q) > bound, equality=len(Q) == bound,
                   value=str(len(Q)), detail=f"bound={bound}")


def _eval_quasi_girth(D: Digraph, params: dict) -> Outcome:
    size, _ = min_qkernel(D, 2)
    bound = Fraction(2, 5) * D.n
    return Outcome(violated=size > bound, equality=size == bound,
                   value=str(size), detail=f"bound={bound}")


def _eval_acyclic_dichotomy(D: Digraph, params: dict) -> Outcome:
    n = D.n
    amax = max_acyclic_set_size(D)
    best_deg = -1
    for y in quasikernel_members(D):
        best_deg = max(best_deg, D.out_degree(y))
    achieved = max(amax * amax, (best_deg + 1) ** 2 if best_deg >= 0 else 0)
    return Outcome(violated=achieved < n, equality=achieved == n,
                   value=str(achieved), detail=f"acyclic={amax},out-degree={best_deg}")


def _eval_unicyclic_average(D: Digraph, params: dict) -> Outcome:
    q = int(params["q"])
    if q < 3 or q % 2 == 0:
        raise PreconditionError(f"unicyclic average needs odd q >= 3, got {q}")
    B = find_bipartition(D)
    st = unicyclic_structure(D, B)
    half = st.ell
    best_u = min_qkernel(D, q, restrict=B.u)
    best_v = min_qkernel(D, q, restrict=B.v)
    total = best_u[0] + best_v[0]
    bound = 2 * Fraction(-(-half // (q + 1)), half) * D.n
    return Outcome(violated=total > bound, equality=total == bound,
                   value=str(total), detail=f"bound={bound}")


@dataclass(frozen=True)
class ConjectureInfo:
    cid: str
    summary: str
    base_filter: DigraphFilter
    evaluate: Callable[[Digraph, dict], Outcome]
    corpus: str = "labeled"  # "labeled" | "unicyclic" | "table"


CONJECTURES: dict[str, ConjectureInfo] = {
    info.cid: info for info in (
        ConjectureInfo(
            "small-quasikernel",
            "every source-free digraph has a quasikernel of size <= n/2",
            DigraphFilter(source_free=True), _eval_small_quasikernel),
        ConjectureInfo(
            "large-quasikernel",
            "every digraph has a quasikernel with |N+[Q]| >= n/2",
            DigraphFilter(), _eval_large_quasikernel),
        ConjectureInfo(
            "sqrt-small-quasikernel",
            "the constructive route stays within n - floor(sqrt(n)) on "
            "source-free digraphs",
            DigraphFilter(source_free=True), _eval_sqrt_constructive),
        ConjectureInfo(
            "small-cycles",
            "min q-kernel <= max over cycle lengths l of ceil(l/(q+1))/l * n",
            DigraphFilter(source_free=True), _eval_small_cycles),
        ConjectureInfo(
            "even-larger",
            "some quasikernel has |N+(Q)| >= (n - |Q|)/2",
            DigraphFilter(), _eval_even_larger),
        ConjectureInfo(
            "quasi-girth",
            "source-free bipartite digraphs of directed girth >= 6 have a "
            "quasikernel of size <= (1/2 - 1/10) n",
            DigraphFilter(source_free=True, bipartite=True, min_girth=6),
            _eval_quasi_girth),
        ConjectureInfo(
            "acyclic-dichotomy",
            "either an acyclic-inducing set of size sqrt(n) or a quasikernel "
            "member of out-degree sqrt(n) - 1 exists",
            DigraphFilter(), _eval_acyclic_dichotomy),
        ConjectureInfo(
            "unicyclic-average",
            "U-side plus V-side minimum q-kernels average to the cycle-spectrum bound",
            DigraphFilter(), _eval_unicyclic_average, corpus="unicyclic"),
        ConjectureInfo(
            "min-degree-table",
            "empirical lower bounds on the minimum-in-degree constants",
            DigraphFilter(), _eval_small_quasikernel, corpus="table"),
    )
}


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReportEntry:
    digraph: str  # canonical text
    value: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"digraph": self.digraph, "value": self.value, "detail": self.detail}


@dataclass(frozen=True)
class SearchReport:
    target: str
    params: dict
    n_range: tuple[int, int]
    filters: tuple[str, ...]
    seed: int | None
    digraphs_checked: int
    counterexamples: tuple[ReportEntry, ...]
    extremal_witnesses: tuple[ReportEntry, ...]
    elapsed_ms: float | None = None

    def to_json(self) -> str:
        doc = {
            "target": self.target,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "n_range": list(self.n_range),
            "filters": list(self.filters),
            "seed": self.seed,
            "digraphs_checked": self.digraphs_checked,
            "counterexamples": [e.as_dict() for e in self.counterexamples],
            "extremal_witnesses": [e.as_dict() for e in self.extremal_witnesses],
            "elapsed_ms": self.elapsed_ms,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


class ReportVerificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchScope:
    n_min: int = 2
    n_max: int = 4
    samples: int | None = None
    seed: int | None = None
    arc_prob: float = 0.5
    filters: DigraphFilter = field(default_factory=DigraphFilter)
    jobs: int = 1
    witness_cap: int | None = 32


def _chunks(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total)) if total else 1
    size = -(-total // jobs)
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)] or [(0, 0)]


def _scan_chunk(args: tuple) -> tuple[int, list[tuple], list[tuple]]:
    """Worker: evaluate one contiguous chunk of an enumeration.

    Returns (checked, counterexamples, equalities); entry keys (n, index)
    keep the later merge canonical.
    """
    cid, params, n, mode, lo, hi, seed, arc_prob, flt = args
    info = CONJECTURES[cid]
    pairs = arc_pairs(n)
    head_bits = _head_bit_masks(n, pairs) if mode == "exhaustive" and _wants_in_degrees(flt) else None
    checked = 0
    ces: list[tuple] = []
    eqs: list[tuple] = []
    for idx in range(lo, hi):
        if mode == "exhaustive":
            if head_bits is not None and any(not (idx & hb) for hb in head_bits):
                continue
            D = digraph_from_arc_mask(n, idx, pairs)
        else:
            D = _sampled_digraph(seed, n, idx, arc_prob, pairs)
        if not flt.admits(D):
            continue
        checked += 1
        outcome = info.evaluate(D, params)
        if outcome.violated:
            ces.append((n, idx, digraph_to_text(D), outcome.value, outcome.detail))
        elif outcome.equality:
            eqs.append((n, idx, digraph_to_text(D), outcome.value, outcome.detail))
    return checked, ces, eqs


def check_conjecture(cid: str, params: dict | None = None,
                     scope: SearchScope | None = None,
                     include_timing: bool = False) -> SearchReport:
    """Sweep one registered inequality over the scoped digraphs.

    Reports are deterministic for fixed (cid, params, scope) regardless of
    scope.jobs; elapsed_ms stays null unless include_timing is set, so the
    document is byte-stable across runs.
    """
    if cid not in CONJECTURES:
        raise PreconditionError(
            f"unknown conjecture id {cid!r}; known: {', '.join(sorted(CONJECTURES))}")
    info = CONJECTURES[cid]
    params = dict(params or {})
    scope = scope or SearchScope()
    t0 = time.perf_counter()
    if info.corpus == "unicyclic":
        checked, ces, eqs = _run_unicyclic(info, params, scope)
    elif info.corpus == "table":
        checked, ces, eqs = _run_table(params, scope)
    else:
        checked, ces, eqs = _run_labeled(info, params, scope)
    ces.sort(key=lambda e: (e[0], e[1]))
    eqs.sort(key=lambda e: (e[0], e[1]))
    cap = scope.witness_cap
    if cap is not None:
        ces = ces[:cap]
        eqs = eqs[:cap]
    elapsed = (time.perf_counter() - t0) * 1000.0
    flt = scope.filters.merged_with(info.base_filter)
    return SearchReport(
        target=cid,
        params=params,
        n_range=(scope.n_min, scope.n_max),
        filters=flt.describe(),
        seed=scope.seed,
        digraphs_checked=checked,
        counterexamples=tuple(ReportEntry(t, v, d) for (_, _, t, v, d) in ces),
        extremal_witnesses=tuple(ReportEntry(t, v, d) for (_, _, t, v, d) in eqs),
        elapsed_ms=elapsed if include_timing else None,
    )


def _run_labeled(info: ConjectureInfo, params: dict, scope: SearchScope
                 ) -> tuple[int, list, list]:
    flt = scope.filters.merged_with(info.base_filter)
    mode = "exhaustive" if scope.samples is None else "random"
    tasks = []
    for n in range(scope.n_min, scope.n_max + 1):
        if mode == "exhaustive":
            if n > EXHAUSTIVE_MAX_N:
                raise PreconditionError(
                    f"exhaustive sweep refused for n={n} > {EXHAUSTIVE_MAX_N}")
            total = 1 << (n * (n - 1))
        else:
            if n > RANDOM_MAX_N:
                raise PreconditionError(f"random sweep refused for n={n} > {RANDOM_MAX_N}")
            if scope.seed is None:
                raise PreconditionError("random mode needs a seed")
            total = scope.samples
        for lo, hi in _chunks(total, scope.jobs):
            tasks.append((info.cid, params, n, mode, lo, hi, scope.seed,
                          scope.arc_prob, flt))
    checked = 0
    ces: list[tuple] = []
    eqs: list[tuple] = []
    if scope.jobs <= 1:
        results = map(_scan_chunk, tasks)
    else:
        with ProcessPoolExecutor(max_workers=scope.jobs) as pool:
            results = list(pool.map(_scan_chunk, tasks))
    for part_checked, part_ces, part_eqs in results:
        checked += part_checked
        ces.extend(part_ces)
        eqs.extend(part_eqs)
    return checked, ces, eqs


def _run_unicyclic(info: ConjectureInfo, params: dict, scope: SearchScope
                   ) -> tuple[int, list, list]:
    if scope.n_max > 9:
        raise PreconditionError("unicyclic corpus is exhaustive only up to n = 9")
    checked = 0
    ces: list[tuple] = []
    eqs: list[tuple] = []
    for n in range(max(scope.n_min, 4), scope.n_max + 1):
        for idx, (D, _) in enumerate(enumerate_unicyclic_bipartite(n)):
            checked += 1
            outcome = info.evaluate(D, params)
            if outcome.violated:
                ces.append((n, idx, digraph_to_text(D), outcome.value, outcome.detail))
            elif outcome.equality:
                eqs.append((n, idx, digraph_to_text(D), outcome.value, outcome.detail))
    return checked, ces, eqs


def _run_table(params: dict, scope: SearchScope) -> tuple[int, list, list]:
    delta_max = int(params.get("delta_max", 3))
    q_max = int(params.get("q_max", 3))
    cells = c_table(delta_max, q_max, n_exhaustive=min(scope.n_max, EXHAUSTIVE_MAX_N) if scope.samples is None else 0)
    checked = len(cells)
    ces: list[tuple] = []
    eqs: list[tuple] = []
    for i, ((delta, q), (ratio, witness)) in enumerate(sorted(cells.items())):
        floor = Fraction(1, delta + 1)
        label = f"delta={delta},q={q},ratio={ratio}"
        entry = (delta * 1000 + q, i, digraph_to_text(witness), str(ratio), label)
        if ratio < floor or (q == 2 and delta >= 2 and ratio < Fraction(1, 3)):
            ces.append(entry)
        else:
            eqs.append(entry)
    return checked, ces, eqs


def c_table(delta_max: int, q_max: int, *, n_exhaustive: int = 0
            ) -> dict[tuple[int, int], tuple[Fraction, Digraph]]:
    """Empirical lower bounds on the smallest constants c such that digraphs
    of minimum in-degree delta always have a q-kernel of size <= c*n.

    Each (delta, q) cell is the largest ratio (min q-kernel)/n seen over the
    seeded families (bidirected clique, tripartite blow-up) plus, when
    n_exhaustive > 0, every labeled digraph up to that order with minimum
    in-degree exactly delta.  Cells always dominate 1/(delta+1).
    """
    from .generators import bidirected_clique, tripartite_blowup
    if delta_max < 1 or q_max < 2:
        raise PreconditionError("need delta_max >= 1 and q_max >= 2")
    cells: dict[tuple[int, int], tuple[Fraction, Digraph]] = {}
    for delta in range(1, delta_max + 1):
        candidates = [bidirected_clique(delta + 1), tripartite_blowup(delta)]
        if n_exhaustive:
            flt = DigraphFilter(exact_min_in_degree=delta)
            for n in range(2, n_exhaustive + 1):
                candidates.extend(enumerate_digraphs(n, flt))
        for q in range(2, q_max + 1):
            best: tuple[Fraction, Digraph] | None = None
            for D in candidates:
                size, _ = min_qkernel(D, q)
                ratio = Fraction(size, D.n)
                if best is None or ratio > best[0]:
                    best = (ratio, D)
            assert best is not None
            if best[0] < Fraction(1, delta + 1):
                raise RuntimeError("internal error: clique family should force 1/(delta+1)")
            cells[(delta, q)] = best
    return cells


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def save_report(report: SearchReport, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())


def load_report(path: str, verify: bool = True) -> SearchReport:
    """Read a report document; by default, re-verify every counterexample
    against the oracle and refuse the report if one fails to reproduce."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    report = SearchReport(
        target=doc["target"],
        params=dict(doc["params"]),
        n_range=tuple(doc["n_range"]),
        filters=tuple(doc["filters"]),
        seed=doc["seed"],
        digraphs_checked=doc["digraphs_checked"],
        counterexamples=tuple(ReportEntry(**e) for e in doc["counterexamples"]),
        extremal_witnesses=tuple(ReportEntry(**e) for e in doc["extremal_witnesses"]),
        elapsed_ms=doc.get("elapsed_ms"),
    )
    if verify:
        verify_report(report)
    return report


def verify_report(report: SearchReport) -> None:
    info = CONJECTURES.get(report.target)
    if info is None:
        raise ReportVerificationError(f"unknown target {report.target!r}")
    if info.corpus == "table":
        return  # table cells aggregate over a family; nothing per-digraph to replay
    for entry in report.counterexamples:
        D = digraph_from_text(entry.digraph)
        outcome = info.evaluate(D, report.params)
        if not outcome.violated:
            raise ReportVerificationError(
                f"recorded counterexample no longer violates {report.target}: "
                f"{entry.digraph!r}")
