import pytest
from hypothesis import given, strategies as st

from qkernels import (
    PreconditionError,
    build_digraph,
    closed_neighborhood,
    closed_out_neighborhood,
    greedy_acyclic_set,
    greedy_half_covering_mis,
    induced_subdigraph,
    is_independent,
    is_q_kernel,
    large_quasikernel,
    pendant_blowup,
    quasikernel_covering,
    quasikernel_members,
    three_kernel_large,
)
from qkernels.digraph import degree_stats, disjoint_union
from qkernels.generators import cycle, digon_star, bidirected_clique
from qkernels.kernels import is_acyclic
from qkernels.oracle import enumerate_digraphs


@st.composite
def digraphs(draw, max_n=7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return build_digraph(n, arcs)


def test_greedy_acyclic_examples():
    assert greedy_acyclic_set(cycle(3)) == {0, 2}
    assert greedy_acyclic_set(build_digraph(5, [])) == set(range(5))
    assert len(greedy_acyclic_set(bidirected_clique(3))) >= 1


@given(digraphs())
def test_greedy_acyclic_bound_and_acyclicity(D):
    A = greedy_acyclic_set(D)
    H, _ = induced_subdigraph(D, A)
    assert is_acyclic(H)
    Delta = degree_stats(D).max_out
    assert len(A) * (Delta + 1) >= D.n


def test_greedy_half_covering_examples():
    assert greedy_half_covering_mis(cycle(3)) == {0}
    assert greedy_half_covering_mis(cycle(4)) == {0, 2}
    assert greedy_half_covering_mis(build_digraph(4, [])) == set(range(4))


@given(digraphs())
def test_greedy_half_covering_invariants(D):
    S = greedy_half_covering_mis(D)
    assert is_independent(D, S)
    assert closed_neighborhood(D, S) == set(range(D.n))  # maximality
    assert 2 * len(closed_out_neighborhood(D, S)) >= D.n


def test_three_kernel_examples():
    Q, q = three_kernel_large(cycle(3))
    assert q == 2 and 3 * len(closed_out_neighborhood(cycle(3), Q)) >= 3
    Q6, q6 = three_kernel_large(cycle(6))
    assert (Q6, q6) == ({0, 2, 4}, 2)
    star = digon_star(3)
    Qs, qs = three_kernel_large(star)
    assert 3 * len(closed_out_neighborhood(star, Qs)) >= 4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_three_kernel_exhaustive(n):
    for D in enumerate_digraphs(n):
        Q, q = three_kernel_large(D)
        assert q in (2, 3)
        assert is_q_kernel(D, Q, q)
        assert 3 * len(closed_out_neighborhood(D, Q)) >= n


def test_quasikernel_covering_examples():
    C4 = cycle(4)
    Q = quasikernel_covering(C4, {0, 1, 2})
    assert {0, 1, 2} <= closed_out_neighborhood(C4, Q)
    assert is_q_kernel(C4, Q, 2)

    assert is_q_kernel(C4, quasikernel_covering(C4, set()), 2)

    path = build_digraph(3, [(0, 1), (1, 2)])
    assert quasikernel_covering(path, {0, 1, 2}) == {0, 2}


def test_quasikernel_covering_rejects_cyclic_a():
    with pytest.raises(PreconditionError, match="acyclic"):
        quasikernel_covering(cycle(3), {0, 1, 2})


@given(digraphs(max_n=6))
def test_quasikernel_covering_property(D):
    A = greedy_acyclic_set(D)
    Q = quasikernel_covering(D, A)
    assert A <= closed_out_neighborhood(D, Q)
    assert is_q_kernel(D, Q, 2) or D.n == 0


def test_quasikernel_members_examples():
    assert quasikernel_members(cycle(4)) == {0, 1, 2, 3}
    assert quasikernel_members(cycle(3)) == {0, 1, 2}
    path = build_digraph(3, [(0, 1), (1, 2)])
    assert quasikernel_members(path) == {0, 2}


def test_large_quasikernel_examples():
    C3 = cycle(3)
    Q = large_quasikernel(C3)
    assert len(closed_out_neighborhood(C3, Q)) ** 3 >= 3
    four = disjoint_union(cycle(2), cycle(2))
    Q4 = large_quasikernel(four)
    assert len(closed_out_neighborhood(four, Q4)) >= 2
    arcless = build_digraph(8, [])
    assert large_quasikernel(arcless) == set(range(8))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_large_quasikernel_exhaustive(n):
    for D in enumerate_digraphs(n):
        Q = large_quasikernel(D)
        assert is_q_kernel(D, Q, 2)
        assert len(closed_out_neighborhood(D, Q)) ** 3 >= n


def test_pendant_blowup_examples():
    two = pendant_blowup(cycle(2), 1)
    assert two.n == 4 and two.arc_count == 4
    nine = pendant_blowup(cycle(3), 2)
    assert nine.n == 9 and nine.arc_count == 3 + 6
    with pytest.raises(PreconditionError):
        pendant_blowup(cycle(2), 0)


def test_pendant_blowup_forces_coverage():
    # Minimum quasikernels of the blow-up imply coverage >= ceil(n/2 - n/(2k))
    # back in the base digraph, provided the half bound holds upstairs.
    from qkernels.oracle import min_qkernel
    for base in (cycle(2), cycle(3), digon_star(2)):
        n = base.n
        k = n + 1
        blown = pendant_blowup(base, k)
        size, witness = min_qkernel(blown, 2)
        assert 2 * size <= blown.n
        Q = frozenset(v for v in witness if v < n)
        assert is_q_kernel(base, Q, 2)
        cov = len(closed_out_neighborhood(base, Q))
        assert cov >= -(-(n * (k - 1)) // (2 * k))  # ceil(n/2 - n/(2k))
