"""Small q-kernels inside one part of a bipartite digraph of given girth.

The engine is the unicyclic case: every vertex has in-degree exactly 1 and
the underlying graph is connected, so there is exactly one directed cycle C
and every vertex w hangs off it along a unique in-path P_w.  Label the cycle
(u_1, v_1, ..., u_L, v_L) with the u_j in part U; the type of w is the index
j where P_w leaves the cycle, and ty(j) counts the type-j vertices.  A short
path from u_j stays within type j, giving dist(u_j, w) <= ty(j) - 1.

For odd q >= 3 the recursion below produces a q-kernel Q inside U with
(q+3)|Q| <= 2n, shrinking the digraph until two balance conditions hold and
then reading Q off the cycle:

(1) while some vertex sits at distance >= q from C, cut the out-ball of
    radius (q+1)/2 around the path vertex halfway up and adjoin the U-vertex
    just above the cut;
(2) while some type class has ty(j) >= (q+3)/2, either a single u_j or
    {u_1, u_2} suffices, or the whole class contracts away;
(3)/(4) with m = ceil((q+3)/4), take every m-th u_j; when the digraph is too
    small for ceil(L/m) of them, rotate the labels so the smallest type
    class sits last and take floor(L/m).

General source-free bipartite digraphs of directed girth >= L reduce to the
unicyclic case: keep one in-arc per vertex (the least in-neighbor), split
into weakly connected components, and solve each at q' = 2L - 3.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import (
    Bipartition,
    Digraph,
    PreconditionError,
    add_arcs,
    directed_cycle_lengths,
    distances_from,
    find_bipartition,
    induced_subdigraph,
    is_source_free,
)
from .kernels import check_q_kernel


@dataclass(frozen=True)
class UnicyclicStructure:
    """Cycle labeling and type data of a unicyclic bipartite digraph.

    cycle lists (u_1, v_1, ..., u_L, v_L) in arc order starting at the least
    U-vertex on the cycle.  parent[w] is the unique in-neighbor of w;
    type_of[w] is 1-based; ty[j-1] counts type-j vertices; dist_to_cycle[w]
    is the length of P_w.
    """

    cycle: tuple[int, ...]
    ell: int
    parent: tuple[int, ...]
    type_of: tuple[int, ...]
    ty: tuple[int, ...]
    dist_to_cycle: tuple[int, ...]

    @property
    def cycle_len(self) -> int:
        return 2 * self.ell

    def u(self, j: int) -> int:
        """u_j, 1-based."""
        return self.cycle[2 * (j - 1)]

    def v(self, j: int) -> int:
        """v_j, 1-based."""
        return self.cycle[2 * j - 1]


def unicyclic_structure(D: Digraph, B: Bipartition) -> UnicyclicStructure:
    """Locate the unique cycle, orient it, and classify vertices by type.

    Preconditions checked separately: in-degree exactly 1 everywhere,
    connected underlying graph, bipartite per B, and cycle length >= 4
    (a digon cycle is rejected; the size bounds fail there).
    """
    n = D.n
    if n == 0:
        raise PreconditionError("empty digraph is not unicyclic")
    bad = [v for v in range(n) if D.in_degree(v) != 1]
    if bad:
        raise PreconditionError(f"vertex {bad[0]} has in-degree {D.in_degree(bad[0])}, not 1")
    for u, v in D.arcs:
        if (u in B.u) == (v in B.u):
            raise PreconditionError(f"arc ({u}, {v}) does not cross the bipartition")
    parent = tuple(D.in_adj[v][0] for v in range(n))
    # Walk parents from vertex 0 until a repeat: that vertex is on the cycle.
    seen = {0}
    w = 0
    while True:
        w = parent[w]
        if w in seen:
            break
        seen.add(w)
    cycle_set = {w}
    x = parent[w]
    while x != w:
        cycle_set.add(x)
        x = parent[x]
    # Connectivity: every vertex must reach the one cycle along parents; a
    # second cycle (detected by revisiting the current walk) means another
    # weak component.
    reached = set(cycle_set)
    for start in range(n):
        trail = []
        x = start
        while x not in reached:
            if x in trail:
                raise PreconditionError("underlying graph is not connected")
            trail.append(x)
            x = parent[x]
        reached.update(trail)
    if len(cycle_set) == 2:
        raise PreconditionError("cycle is a digon; need cycle length >= 4")
    if len(cycle_set) % 2:
        raise PreconditionError("odd directed cycle contradicts the bipartition")
    # Orient the cycle along arcs starting from the least U-vertex on it.
    successor = {parent[c]: c for c in cycle_set}
    start = min(cycle_set & B.u)
    order = [start]
    x = successor[start]
    while x != start:
        order.append(x)
        x = successor[x]
    ell = len(order) // 2
    for idx, c in enumerate(order):
        if (c in B.u) != (idx % 2 == 0):
            raise PreconditionError("cycle does not alternate between parts")
    pos = {c: idx for idx, c in enumerate(order)}
    type_of = [0] * n
    dist = [0] * n
    for c in cycle_set:
        type_of[c] = pos[c] // 2 + 1
    for v in range(n):
        if v in cycle_set:
            continue
        trail = [v]
        x = parent[v]
        while type_of[x] == 0 and x not in cycle_set:
            trail.append(x)
            x = parent[x]
        base_type = type_of[x]
        base_dist = dist[x]
        for back, t in enumerate(reversed(trail), 1):
            type_of[t] = base_type
            dist[t] = base_dist + back
    ty = [0] * ell
    for v in range(n):
        ty[type_of[v] - 1] += 1
    if sum(ty) != n or any(c < 2 for c in ty):
        raise RuntimeError("internal error: type counts are inconsistent")
    st = UnicyclicStructure(
        cycle=tuple(order),
        ell=ell,
        parent=parent,
        type_of=tuple(type_of),
        ty=tuple(ty),
        dist_to_cycle=tuple(dist),
    )
    for j in range(1, ell + 1):
        table = distances_from(D, [st.u(j)])
        for w in range(n):
            if type_of[w] == j and not table[w] <= ty[j - 1] - 1:
                raise RuntimeError(
                    "internal error: type-distance inequality dist(u_j, w) <= ty(j)-1 failed")
    return st


def _restrict_bipartition(B: Bipartition, old_of_new: tuple[int, ...]) -> Bipartition:
    u = frozenset(i for i, o in enumerate(old_of_new) if o in B.u)
    return Bipartition(u=u, v=frozenset(range(len(old_of_new))) - u)


def _verified_unicyclic(D: Digraph, B: Bipartition, q: int, Q: frozenset[int]) -> frozenset[int]:
    if not Q <= B.u:
        raise RuntimeError("internal error: kernel leaves part U")
    if not check_q_kernel(D, Q, q).ok:
        raise RuntimeError(f"internal error: constructed set is not a {q}-kernel")
    if (q + 3) * len(Q) > 2 * D.n:
        raise RuntimeError("internal error: size bound (q+3)|Q| <= 2n failed")
    return Q


def unicyclic_qkernel(D: Digraph, B: Bipartition, q: int) -> frozenset[int]:
    """A q-kernel Q inside U with (q+3)|Q| <= 2n, for odd q >= 3.

    Requires a unicyclic bipartite digraph with cycle length >= 4 and
    n >= (q+3)/2.  Certification failure after a successful precondition
    check would be an implementation bug and raises RuntimeError.
    """
    if q < 3 or q % 2 == 0:
        raise PreconditionError(f"need odd q >= 3, got {q}")
    st = unicyclic_structure(D, B)
    n = D.n
    if 2 * n < q + 3:
        raise PreconditionError(f"need n >= (q+3)/2 = {(q + 3) // 2}, got n={n}")
    half = (q + 1) // 2
    cycle_set = set(st.cycle)

    # Phase 1: some vertex at distance >= q from the cycle.
    far_best = max(st.dist_to_cycle)
    if far_best >= q:
        w = min(v for v in range(n) if st.dist_to_cycle[v] == far_best)
        wprime = w
        for _ in range(half):
            wprime = st.parent[wprime]
        if wprime in cycle_set:
            raise RuntimeError("internal error: cut vertex landed on the cycle")
        ball = distances_from(D, [wprime])
        X = {x for x in range(n) if ball[x] <= half}
        H, old = induced_subdigraph(D, set(range(n)) - X)
        sub = unicyclic_qkernel(H, _restrict_bipartition(B, old), q)
        z = wprime if wprime in B.u else st.parent[wprime]
        Q = frozenset(old[i] for i in sub) | {z}
        return _verified_unicyclic(D, B, q, Q)

    # Phase 2: some type class of size >= (q+3)/2.
    heavy = [j for j in range(1, st.ell + 1) if 2 * st.ty[j - 1] >= q + 3]
    if heavy:
        j = heavy[0]
        if 2 * (n - st.ty[j - 1]) <= q + 1:
            return _verified_unicyclic(D, B, q, frozenset({st.u(j)}))
        if st.ell == 2:
            return _verified_unicyclic(D, B, q, frozenset({st.u(1), st.u(2)}))
        keep = [v for v in range(n) if st.type_of[v] != j]
        H0, old = induced_subdigraph(D, keep)
        new_of_old = {o: i for i, o in enumerate(old)}
        jprev = j - 1 if j > 1 else st.ell
        jnext = j + 1 if j < st.ell else 1
        H = add_arcs(H0, [(new_of_old[st.v(jprev)], new_of_old[st.u(jnext)])])
        sub = unicyclic_qkernel(H, _restrict_bipartition(B, old), q)
        Q = frozenset(old[i] for i in sub) | {st.u(j)}
        return _verified_unicyclic(D, B, q, Q)

    # Phases 3/4: read the kernel off the cycle, every m-th u_j.
    m = (q + 6) // 4  # ceil((q+3)/4); q is -3+4m or -5+4m
    ell = st.ell
    need = -(-ell // m)
    if 2 * n >= (q + 3) * need:
        Q = frozenset(st.u(1 + m * t) for t in range(need))
        return _verified_unicyclic(D, B, q, Q)
    a = ell % m
    if a == 0:
        raise RuntimeError("internal error: phase 4 requires ell not divisible by m")
    if ell < m + a:
        raise RuntimeError("internal error: phase 4 requires ell >= m + a")
    cap_all = q - 2 * m - 2 * a + 5
    if any(c > cap_all for c in st.ty) or min(st.ty) > cap_all - 2:
        raise RuntimeError("internal error: type caps of phase 4 failed")
    jstar = min(range(1, ell + 1), key=lambda j: (st.ty[j - 1], j))
    # Rotate labels so type jstar becomes type ell.
    rotated = [st.u(((k + jstar - 1) % ell) + 1) for k in range(1, ell + 1)]
    Q = frozenset(rotated[m * t] for t in range(ell // m))
    return _verified_unicyclic(D, B, q, Q)


@dataclass(frozen=True)
class InDegreeOneReduction:
    """A spanning in-degree-1 subdigraph and its unicyclic components.

    components holds (digraph, bipartition, old_of_new) triples, relabeled
    densely; old_of_new maps back to the input labels.
    """

    subdigraph: Digraph
    components: tuple[tuple[Digraph, Bipartition, tuple[int, ...]], ...]


def indegree_one_reduction(D: Digraph, B: Bipartition) -> InDegreeOneReduction:
    """Keep one in-arc per vertex (from the least in-neighbor) and split.

    Each weakly connected component of the result is unicyclic, and every
    directed cycle of the result is a directed cycle of D.
    """
    if not is_source_free(D):
        raise PreconditionError("digraph has a source")
    arcs = tuple((min(D.in_adj[v]), v) for v in range(D.n))
    spanning = Digraph(D.n, arcs, _validated=True)
    comp_of = [-1] * D.n
    comps = 0
    for start in range(D.n):
        if comp_of[start] != -1:
            continue
        stack = [start]
        comp_of[start] = comps
        while stack:
            x = stack.pop()
            for y in spanning.out_adj[x] + spanning.in_adj[x]:
                if comp_of[y] == -1:
                    comp_of[y] = comps
                    stack.append(y)
        comps += 1
    parts = []
    for c in range(comps):
        keep = [v for v in range(D.n) if comp_of[v] == c]
        H, old = induced_subdigraph(spanning, keep)
        parts.append((H, _restrict_bipartition(B, old), old))
    return InDegreeOneReduction(subdigraph=spanning, components=tuple(parts))


def bipartite_qkernel(D: Digraph, q: int, girth: int) -> frozenset[int]:
    """A q-kernel of size at most n/girth inside part U.

    Requires D source-free and bipartite, q, girth >= 3 with
    girth <= (q+3)/2, and no directed cycle shorter than girth.  Works at
    q' = 2*girth - 3 <= q on each unicyclic component of the in-degree-1
    reduction and takes the union.
    """
    if q < 3 or girth < 3:
        raise PreconditionError(f"need q >= 3 and girth >= 3, got q={q}, girth={girth}")
    if 2 * girth > q + 3:
        raise PreconditionError(f"need girth <= (q+3)/2, got girth={girth}, q={q}")
    if not is_source_free(D):
        raise PreconditionError("digraph has a source")
    B = find_bipartition(D)
    if B is None:
        raise PreconditionError("digraph is not bipartite")
    short = directed_cycle_lengths(D, min(girth - 1, D.n))
    if short:
        raise PreconditionError(f"directed {min(short)}-cycle violates girth >= {girth}")
    qprime = 2 * girth - 3
    reduction = indegree_one_reduction(D, B)
    Q: set[int] = set()
    for H, BH, old in reduction.components:
        st = unicyclic_structure(H, BH)
        if st.cycle_len < girth:
            raise RuntimeError("internal error: component cycle shorter than the girth bound")
        Q.update(old[i] for i in unicyclic_qkernel(H, BH, qprime))
    result = frozenset(Q)
    if not result <= B.u:
        raise RuntimeError("internal error: kernel leaves part U")
    if not check_q_kernel(D, result, q).ok:
        raise RuntimeError(f"internal error: union is not a {q}-kernel")
    if girth * len(result) > D.n:
        raise RuntimeError("internal error: size bound |Q| <= n/girth failed")
    return result


def cycle_tails_lower_bound(q: int, ell: int) -> Digraph:
    """The tight example forcing U-side q-kernels of size >= n/q.

    A directed cycle (u_1, v_1, ..., u_ell, v_ell) with a directed path of
    length q-2 appended to every v_i; n = q*ell.  Reaching the end of the
    i-th tail within q steps requires a vertex in {u_i} or on that tail, so
    any q-kernel inside U has at least ell = n/q vertices.
    """
    if q < 3:
        raise PreconditionError(f"need q >= 3, got {q}")
    if ell < 1:
        raise PreconditionError(f"need ell >= 1, got {ell}")
    arcs = [(i, (i + 1) % (2 * ell)) for i in range(2 * ell)]
    nxt = 2 * ell
    for i in range(ell):
        prev = 2 * i + 1  # v_{i+1}
        for _ in range(q - 2):
            arcs.append((prev, nxt))
            prev = nxt
            nxt += 1
    D = Digraph(nxt, arcs, _validated=True)
    if D.n != q * ell:
        raise RuntimeError("internal error: tail construction has the wrong order")
    return D
