"""Digraph q-kernel workbench.

Construct small and large q-kernels, disjoint kernel families, and
bipartite girth-parameterized kernels; certify them; and sweep the
underlying inequalities over small digraphs with brute-force oracles.
"""

from .digraph import (
    Bipartition,
    DegreeStats,
    Digraph,
    DigraphFormatError,
    DistanceTable,
    PreconditionError,
    add_arcs,
    build_digraph,
    closed_neighborhood,
    closed_out_neighborhood,
    degree_stats,
    digraph_from_text,
    digraph_to_text,
    directed_cycle_lengths,
    disjoint_union,
    distances_from,
    find_bipartition,
    induced_subdigraph,
    is_independent,
    is_source_free,
    open_in_neighborhood,
    open_out_neighborhood,
    read_digraph,
    reachable_within,
    scc_diameter,
    strongly_connected_components,
    write_digraph,
)
from .kernels import (
    KernelCertificate,
    KernelViolation,
    check_q_kernel,
    is_acyclic,
    is_q_kernel,
    kernel_of_acyclic,
    quasikernel,
    quasikernel_avoiding,
    quasikernel_avoiding_set,
)
from .small import (
    GeneralizedSmallReport,
    bipartite_girth5_quasikernel,
    independence_upper_bound,
    small_quasikernel,
    small_quasikernel_generalized,
)
from .large import (
    greedy_acyclic_set,
    greedy_half_covering_mis,
    large_quasikernel,
    pendant_blowup,
    quasikernel_covering,
    quasikernel_members,
    three_kernel_large,
)
from .disjoint import (
    BetaVector,
    beta_vector,
    disjoint_qkernels,
    find_pseudo_source_sets,
    find_source_sets,
    pseudo_source_completion,
    square_through,
    three_kernel_disjoint_from,
)
from .bipartite import (
    InDegreeOneReduction,
    UnicyclicStructure,
    bipartite_qkernel,
    cycle_tails_lower_bound,
    indegree_one_reduction,
    unicyclic_qkernel,
    unicyclic_structure,
)
from .oracle import (
    CONJECTURES,
    DigraphFilter,
    SearchReport,
    SearchScope,
    c_table,
    check_conjecture,
    enumerate_digraphs,
    enumerate_unicyclic_bipartite,
    load_report,
    max_acyclic_set_size,
    max_covering_quasikernel,
    max_quasikernel_surplus,
    min_qkernel,
    save_report,
    verify_report,
)
from .generators import FamilyInfo, family_catalog, generate
