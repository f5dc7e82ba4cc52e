import pytest

from qkernels import (
    PreconditionError,
    closed_out_neighborhood,
    degree_stats,
    find_source_sets,
    generate,
    family_catalog,
    is_q_kernel,
)
from qkernels.generators import (
    bidirected_clique,
    bidirected_path,
    cycle,
    eulerian_tournament,
    leafed_cycle,
    random_unicyclic,
    tournament_pendants,
    tripartite_blowup,
)
from qkernels.large import _covers_within_two, _independent_set_masks
from qkernels.oracle import min_qkernel


def test_cycle_examples():
    assert generate("cycle", l=6).arc_count == 6
    assert generate("cycle", l=2).arcs == ((0, 1), (1, 0))
    with pytest.raises(PreconditionError):
        generate("cycle", l=1)


def test_digon_star_examples():
    D = generate("digon_star", s=2)
    assert D.n == 3 and D.arc_count == 4
    assert find_source_sets(D, 2) == []


def test_eulerian_tournament_examples():
    assert generate("eulerian_tournament", n=3) == cycle(3)
    D = eulerian_tournament(5)
    assert all(D.in_degree(v) == D.out_degree(v) == 2 for v in range(5))
    with pytest.raises(PreconditionError):
        eulerian_tournament(4)


def test_eulerian_tournament_quasikernels_are_singletons():
    for n in (3, 5, 7):
        D = eulerian_tournament(n)
        quasis = [
            mask for mask in _independent_set_masks(D.und_masks, D.full_mask)
            if mask and _covers_within_two(D, mask)
        ]
        assert all(mask.bit_count() == 1 for mask in quasis)
        assert len(quasis) == n
        for mask in quasis:
            members = frozenset(v for v in range(n) if (mask >> v) & 1)
            assert len(closed_out_neighborhood(D, members)) == (n + 1) // 2


def test_cycle_min_qkernel_matches_ceiling():
    for l in (2, 3, 4, 5, 6, 7, 8):
        for q in (2, 3, 4):
            size, _ = min_qkernel(cycle(l), q)
            assert size == -(-l // (q + 1))


def test_cycle_kernels_exist_exactly_for_even_length():
    # q = 1 is special: members must sit exactly two apart.
    assert min_qkernel(cycle(4), 1) == (2, frozenset({0, 2}))
    assert min_qkernel(cycle(6), 1)[0] == 3
    assert min_qkernel(cycle(3), 1) is None
    assert min_qkernel(cycle(5), 1) is None


def test_tripartite_blowup_quasikernels():
    D = tripartite_blowup(2)
    assert D.n == 6
    size, witness = min_qkernel(D, 2)
    assert size == 2 and witness == {0, 1}


def test_bidirected_clique_stats():
    D = bidirected_clique(3)
    assert degree_stats(D) == (2, 2, frozenset())
    assert min_qkernel(D, 2)[0] == 1


def test_bidirected_path_property_asserted():
    assert bidirected_path(5).n == 5
    assert bidirected_path(2).arc_count == 2


def test_cycle_with_tails_and_leafed_cycle():
    assert generate("cycle_with_tails", q=3, l=3).n == 9
    assert generate("leafed_cycle", l=6).n == 9
    with pytest.raises(PreconditionError):
        leafed_cycle(5)


def test_tournament_pendants_sizes():
    assert tournament_pendants(2).n == 4
    assert tournament_pendants(3).n == 9
    hub = tournament_pendants(3, with_hub=True)
    assert hub.n == 10
    with pytest.raises(PreconditionError):
        tournament_pendants(4)


def test_tournament_pendants_hub_keeps_leaves_minimal_quasikernel():
    D = tournament_pendants(2, with_hub=True)
    leaves = frozenset(v for v in range(2, 4))
    assert is_q_kernel(D, leaves, 2)
    for leaf in leaves:
        assert not is_q_kernel(D, leaves - {leaf}, 2)


def test_random_unicyclic_is_deterministic():
    a = random_unicyclic(11, 9, 4)
    b = random_unicyclic(11, 9, 4)
    c = random_unicyclic(12, 9, 4)
    assert a == b
    assert a != c
    assert all(a.in_degree(v) == 1 for v in range(9))


def test_generate_rejects_unknown_and_missing():
    with pytest.raises(PreconditionError, match="unknown family"):
        generate("moebius")
    with pytest.raises(PreconditionError, match="parameter"):
        generate("cycle")


def test_catalog_contents_and_round_trip():
    names = {info.name for info in family_catalog()}
    assert "digon_star" in names
    assert "cycle_with_tails" in names
    for info in family_catalog():
        params = {}
        for item in info.example.split(","):
            key, value = item.split("=")
            params[key] = value
        if info.name == "pendant_blowup":
            D = generate(info.name, base=cycle(2), **params)
        else:
            D = generate(info.name, **params)
        assert D.n >= 1
