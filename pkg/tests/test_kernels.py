import pytest
from hypothesis import given, strategies as st

from qkernels import (
    PreconditionError,
    build_digraph,
    check_q_kernel,
    is_q_kernel,
    kernel_of_acyclic,
    quasikernel,
    quasikernel_avoiding,
    quasikernel_avoiding_set,
    reachable_within,
)
from qkernels.generators import cycle
from qkernels.oracle import enumerate_digraphs
from qkernels.large import _independent_set_masks


def _brute_quasikernels(D):
    out = []
    for mask in _independent_set_masks(D.und_masks, D.full_mask):
        S = frozenset(v for v in range(D.n) if (mask >> v) & 1)
        if (S or D.n == 0) and reachable_within(D, S, 2) == set(range(D.n)):
            out.append(S)
    return out


def test_certificate_examples():
    C4 = cycle(4)
    cert = check_q_kernel(C4, {0, 2}, 2)
    assert cert.ok and cert.distances == (0, 1, 0, 1)
    assert check_q_kernel(C4, {0, 2}, 1).ok  # it is even a kernel

    bad = check_q_kernel(C4, {0}, 2)
    assert not bad.ok and bad.reason == "too-far"
    assert bad.vertex == 3 and bad.distance == 3

    assert check_q_kernel(cycle(6), {0, 3}, 3).ok


def test_certificate_dependence_and_empty():
    C4 = cycle(4)
    dep = check_q_kernel(C4, {0, 1}, 2)
    assert not dep.ok and dep.reason == "not-independent" and dep.arc == (0, 1)
    empty = check_q_kernel(C4, set(), 2)
    assert not empty.ok and empty.reason == "empty"
    assert check_q_kernel(build_digraph(0, []), set(), 1).ok


def test_certificate_monotone_in_q():
    C6 = cycle(6)
    for q in range(1, 7):
        for bigger in range(q, 7):
            if is_q_kernel(C6, {0, 3}, q):
                assert is_q_kernel(C6, {0, 3}, bigger)


def test_kernel_of_acyclic_examples():
    path = build_digraph(3, [(0, 1), (1, 2)])
    assert kernel_of_acyclic(path) == {0, 2}
    assert kernel_of_acyclic(build_digraph(1, [])) == {0}
    assert kernel_of_acyclic(build_digraph(3, [])) == {0, 1, 2}


def test_kernel_of_acyclic_rejects_cycles():
    with pytest.raises(PreconditionError, match="acyclic"):
        kernel_of_acyclic(cycle(3))


def test_kernel_of_acyclic_matches_unique_brute_force():
    # On every acyclic digraph with n <= 4 exactly one independent set
    # dominates within one arc, and the constructor finds it.
    from qkernels.kernels import is_acyclic
    for n in range(1, 5):
        for D in enumerate_digraphs(n):
            if not is_acyclic(D):
                continue
            kernels = []
            for mask in _independent_set_masks(D.und_masks, D.full_mask):
                if not mask:
                    continue
                K = frozenset(v for v in range(n) if (mask >> v) & 1)
                if reachable_within(D, K, 1) == set(range(n)):
                    kernels.append(K)
            assert len(kernels) == 1
            assert kernel_of_acyclic(D) == kernels[0]


def test_quasikernel_examples():
    assert quasikernel(cycle(2)) == {0}
    assert quasikernel(cycle(4)) == {0, 2}
    q3 = quasikernel(cycle(3))
    assert len(q3) == 1 and q3 in _brute_quasikernels(cycle(3))


def test_quasikernel_avoiding_examples():
    assert quasikernel_avoiding(cycle(2), 0) == {0}
    assert quasikernel_avoiding(cycle(4), 0) == {0, 2}
    C3 = cycle(3)
    got = quasikernel_avoiding(C3, 1)
    assert got in _brute_quasikernels(C3)
    assert not (got & {2})        # N+(1) = {2}
    assert got & {0, 1}           # N-[1]


def test_quasikernel_avoiding_set_examples():
    C4 = cycle(4)
    assert quasikernel_avoiding_set(C4, {0, 2}) == {0, 2}
    D = build_digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    assert quasikernel_avoiding_set(D, set()) == quasikernel(D)
    C6 = cycle(6)
    got = quasikernel_avoiding_set(C6, {0})
    assert 1 not in got
    assert got in _brute_quasikernels(C6)


def test_quasikernel_avoiding_set_rejects_dependent_x():
    with pytest.raises(PreconditionError, match="independent"):
        quasikernel_avoiding_set(cycle(2), {0, 1})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_quasikernel_avoiding_postconditions_exhaustive_small(n):
    for D in enumerate_digraphs(n):
        for x in range(n):
            Q = quasikernel_avoiding(D, x)
            assert is_q_kernel(D, Q, 2)
            assert not (Q & set(D.out_adj[x]))
            assert Q & ({x} | set(D.in_adj[x]))


@pytest.mark.slow
def test_quasikernel_avoiding_postconditions_exhaustive_n5():
    for D in enumerate_digraphs(5):
        out_masks, in_masks = D.out_masks, D.in_masks
        for x in range(5):
            Q = quasikernel_avoiding(D, x)
            qmask = 0
            for v in Q:
                qmask |= 1 << v
            assert not (qmask & out_masks[x])
            assert qmask & (in_masks[x] | (1 << x))


def test_constructed_quasikernels_verify_everywhere_n3():
    for D in enumerate_digraphs(3):
        assert is_q_kernel(D, quasikernel(D), 2)


@given(st.integers(min_value=2, max_value=9))
def test_cycle_quasikernel_is_verified_and_bounded(l):
    # The pivot recursion need not minimize; it stays within every-other-vertex.
    Q = quasikernel(cycle(l))
    assert is_q_kernel(cycle(l), Q, 2)
    assert -(-l // 3) <= len(Q) <= -(-l // 2)
