import math
from fractions import Fraction

import pytest

from qkernels import (
    PreconditionError,
    build_digraph,
    bipartite_girth5_quasikernel,
    degree_stats,
    independence_upper_bound,
    is_q_kernel,
    small_quasikernel,
    small_quasikernel_generalized,
)
from qkernels.digraph import disjoint_union
from qkernels.generators import cycle, digon_star, tournament_pendants
from qkernels.large import _independent_set_masks
from qkernels.oracle import DigraphFilter, enumerate_digraphs, min_qkernel


def test_independence_bound_examples():
    assert independence_upper_bound(4, 1, 1) == 2
    assert independence_upper_bound(7, 0, 3) == 7
    assert independence_upper_bound(9, 1, 2) == 6


def test_independence_bound_rejects_zero_degrees():
    with pytest.raises(PreconditionError):
        independence_upper_bound(5, 0, 0)


def test_independence_bound_is_exact_rational():
    assert independence_upper_bound(5, 1, 1) == Fraction(5, 2)


def test_small_quasikernel_tight_examples():
    assert small_quasikernel(cycle(2)) == {0}
    assert len(small_quasikernel(cycle(2))) == 2 - 1
    q4 = small_quasikernel(cycle(4))
    assert len(q4) <= 2 and is_q_kernel(cycle(4), q4, 2)
    star = digon_star(4)  # hub out-degree 4 >= floor(sqrt(5)) = 2
    q = small_quasikernel(star)
    assert len(q) <= 5 - 2 and is_q_kernel(star, q, 2)
    assert q == {0}


def test_small_quasikernel_rejects_sources():
    with pytest.raises(PreconditionError, match="source"):
        small_quasikernel(build_digraph(3, [(0, 1), (1, 2)]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_small_quasikernel_exhaustive(n):
    bound = n - math.isqrt(n)
    for D in enumerate_digraphs(n, DigraphFilter(source_free=True)):
        Q = small_quasikernel(D)
        assert is_q_kernel(D, Q, 2)
        assert len(Q) <= bound


def test_every_independent_set_respects_degree_bound():
    for n in (3, 4):
        for D in enumerate_digraphs(n, DigraphFilter(source_free=True)):
            delta, Delta, _ = degree_stats(D)
            cap = independence_upper_bound(n, delta, Delta)
            for mask in _independent_set_masks(D.und_masks, D.full_mask):
                assert mask.bit_count() <= cap


def test_generalized_report_c4():
    C4 = cycle(4)
    report = small_quasikernel_generalized(C4, {0, 2})
    assert report.claimed_bound == 4 - 2
    assert report.achieved <= report.claimed_bound
    assert report.avoided == {1, 3}
    assert is_q_kernel(C4, report.quasikernel, 2)


def test_generalized_singleton_matches_sqrt_route():
    star = digon_star(4)
    report = small_quasikernel_generalized(star, {0})
    assert report.claimed_bound == 5 - 4
    assert report.quasikernel == {0}
    assert report.min_in_degree == 1
    assert report.degree_route_bound == pytest.approx(5 - math.sqrt(5) + 1)


def test_generalized_rejects_dependent_set():
    with pytest.raises(PreconditionError, match="independent"):
        small_quasikernel_generalized(cycle(2), {0, 1})


def test_pendant_tournament_defeats_avoidance():
    # Every independent X in the k=3 family (n=9) has |N+(X)| <= 2*sqrt(n),
    # while the 6 leaves form an independent set of size n - sqrt(n).
    D = tournament_pendants(3)
    assert D.n == 9
    best = 0
    leaves = frozenset(range(3, 9))
    for mask in _independent_set_masks(D.und_masks, D.full_mask):
        X = [v for v in range(9) if (mask >> v) & 1]
        out = 0
        for v in X:
            out |= D.out_masks[v]
        out &= ~mask
        best = max(best, out.bit_count())
    assert best <= 2 * 3
    from qkernels import is_independent
    assert is_independent(D, leaves) and len(leaves) == 9 - 3


def test_bipartite_girth5_cycle_cases():
    C6 = cycle(6)
    q = bipartite_girth5_quasikernel(C6)
    assert 2 * len(q) < 6 and is_q_kernel(C6, q, 2)
    assert q == {0, 3}

    two = disjoint_union(cycle(6), cycle(6))
    q2 = bipartite_girth5_quasikernel(two)
    assert len(q2) == 4 and is_q_kernel(two, q2, 2)


def test_bipartite_girth5_chorded_cycle():
    chord = build_digraph(8, [(i, (i + 1) % 8) for i in range(8)] + [(0, 3)])
    q = bipartite_girth5_quasikernel(chord)
    assert q == {0, 4, 6}
    assert is_q_kernel(chord, q, 2)


def test_bipartite_girth5_smaller_part_case():
    # C6 plus one pendant leaf unbalances the parts; the smaller part wins.
    D = build_digraph(7, [(i, (i + 1) % 6) for i in range(6)] + [(1, 6)])
    q = bipartite_girth5_quasikernel(D)
    assert q == {1, 3, 5}
    assert 2 * len(q) < 7 and is_q_kernel(D, q, 2)


def test_bipartite_girth5_preconditions():
    with pytest.raises(PreconditionError, match="2-cycle"):
        bipartite_girth5_quasikernel(cycle(2))
    with pytest.raises(PreconditionError, match="bipartite"):
        bipartite_girth5_quasikernel(cycle(5))
    with pytest.raises(PreconditionError, match="4-cycle"):
        bipartite_girth5_quasikernel(cycle(4))
    with pytest.raises(PreconditionError, match="source"):
        bipartite_girth5_quasikernel(build_digraph(6, [(i, i + 1) for i in range(5)]))


def test_bipartite_girth5_below_oracle_half():
    # Construction never beats the oracle, and both sit strictly below n/2.
    for l in (6, 8, 10):
        D = cycle(l)
        q = bipartite_girth5_quasikernel(D)
        size, _ = min_qkernel(D, 2)
        assert size <= len(q)
        assert 2 * len(q) < l


def test_bipartite_girth5_on_random_instances_up_to_n14():
    from corpus import random_bipartite_with_girth
    from qkernels import find_bipartition
    from qkernels.digraph import directed_cycle_lengths

    for seed in range(40):
        n = 6 + seed % 9  # 6..14
        D = random_bipartite_with_girth(seed, n, 6)
        assert find_bipartition(D) is not None
        assert not directed_cycle_lengths(D, 5)
        Q = bipartite_girth5_quasikernel(D)
        assert 2 * len(Q) < n
        assert is_q_kernel(D, Q, 2)


def test_small_quasikernel_never_beats_oracle_and_oracle_meets_bound():
    for n in (2, 3, 4):
        bound = n - math.isqrt(n)
        for D in enumerate_digraphs(n, DigraphFilter(source_free=True)):
            constructed = len(small_quasikernel(D))
            oracle = min_qkernel(D, 2)[0]
            assert oracle <= constructed <= bound
            assert oracle <= bound
