"""Digraph core: dense-vertex digraphs, neighborhoods, distances, components,
cycles, and bipartitions.

Vertices are the integers 0..n-1.  Arcs are ordered pairs (u, v) with u != v;
antiparallel pairs (digons) are allowed, self-loops and duplicate arcs are not.
A digraph is immutable after construction, so every operation here is a pure
function and safe to share across threads and worker processes.

Vertex sets cross the public API as frozensets.  Internally everything runs on
per-vertex bitmasks, which keeps exhaustive sweeps over small digraphs fast.
The bitmask layout is an implementation detail, not a contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

INFINITY = math.inf


class PreconditionError(ValueError):
    """An operation was called on inputs that violate its stated contract."""


class DigraphFormatError(ValueError):
    """Malformed digraph text; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def _set(mask: int) -> frozenset[int]:
    return frozenset(_bits(mask))


class Digraph:
    """A finite simple digraph on vertices 0..n-1.

    Out- and in-adjacency are stored as sorted tuples and, in parallel, as
    per-vertex bitmasks.  The two views are built together and therefore
    always consistent.  Instances compare and hash by (n, arcs).
    """

    __slots__ = ("n", "arcs", "out_masks", "in_masks", "und_masks",
                 "full_mask", "_out_adj", "_in_adj")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]], *, _validated: bool = False):
        arcs = tuple(sorted(arcs))
        if not _validated:
            seen = set()
            for arc in arcs:
                u, v = arc
                if not (0 <= u < n and 0 <= v < n):
                    raise PreconditionError(f"arc {arc} out of range for n={n}")
                if u == v:
                    raise PreconditionError(f"self-loop {arc} is not allowed")
                if arc in seen:
                    raise PreconditionError(f"duplicate arc {arc}")
                seen.add(arc)
        self.n = n
        self.arcs = arcs
        out_masks = [0] * n
        in_masks = [0] * n
        for u, v in arcs:
            out_masks[u] |= 1 << v
            in_masks[v] |= 1 << u
        self.out_masks = tuple(out_masks)
        self.in_masks = tuple(in_masks)
        self.und_masks = tuple(o | i for o, i in zip(out_masks, in_masks))
        self.full_mask = (1 << n) - 1
        self._out_adj: tuple[tuple[int, ...], ...] | None = None
        self._in_adj: tuple[tuple[int, ...], ...] | None = None

    @property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        adj = self._out_adj
        if adj is None:
            adj = tuple(tuple(_bits(m)) for m in self.out_masks)
            self._out_adj = adj
        return adj

    @property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        adj = self._in_adj
        if adj is None:
            adj = tuple(tuple(_bits(m)) for m in self.in_masks)
            self._in_adj = adj
        return adj

    def out_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.out_masks[u] >> v) & 1)

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Digraph)
                and self.n == other.n and self.arcs == other.arcs)

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={list(self.arcs)})"


def build_digraph(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    """Build a digraph, rejecting self-loops, duplicates, and bad vertex ids."""
    if n < 0:
        raise PreconditionError(f"vertex count must be nonnegative, got {n}")
    return Digraph(n, arcs)


@dataclass(frozen=True)
class DistanceTable:
    """Per-vertex directed distance (in arcs) from a fixed source set.

    Unreachable vertices carry math.inf.  dist[v] == 0 exactly for members of
    the source set.
    """

    source: frozenset[int]
    dist: tuple[float, ...]

    def __getitem__(self, v: int) -> float:
        return self.dist[v]

    def eccentricity(self) -> float:
        """Largest distance over all vertices (inf if anything is unreachable)."""
        return max(self.dist, default=0)


@dataclass(frozen=True)
class Bipartition:
    """A 2-partition (u, v) of the vertices with every arc crossing parts."""

    u: frozenset[int]
    v: frozenset[int]

    def side_of(self, x: int) -> str:
        return "U" if x in self.u else "V"


class DegreeStats(NamedTuple):
    min_in: int
    max_out: int
    sources: frozenset[int]


def closed_out_neighborhood(D: Digraph, S: Iterable[int]) -> frozenset[int]:
    """N+[S]: S together with every head of an arc leaving S."""
    m = _mask(S)
    acc = m
    for v in _bits(m):
        acc |= D.out_masks[v]
    return _set(acc)


def open_out_neighborhood(D: Digraph, S: Iterable[int]) -> frozenset[int]:
    """N+(S): heads of arcs leaving S, excluding S itself."""
    m = _mask(S)
    acc = 0
    for v in _bits(m):
        acc |= D.out_masks[v]
    return _set(acc & ~m)


def open_in_neighborhood(D: Digraph, S: Iterable[int]) -> frozenset[int]:
    """N-(S): vertices outside S with an arc into S."""
    m = _mask(S)
    acc = 0
    for v in _bits(m):
        acc |= D.in_masks[v]
    return _set(acc & ~m)


def closed_neighborhood(D: Digraph, S: Iterable[int]) -> frozenset[int]:
    """N[S] = N+[S] together with N-(S): everything touching an arc at S."""
    m = _mask(S)
    acc = m
    for v in _bits(m):
        acc |= D.out_masks[v] | D.in_masks[v]
    return _set(acc)


def distances_from(D: Digraph, S: Iterable[int]) -> DistanceTable:
    """Multi-source BFS along arc direction; unreachable vertices get inf."""
    start = _mask(S)
    if start == 0:
        raise PreconditionError("distance from the empty set is undefined")
    if start & ~D.full_mask:
        raise PreconditionError("source set contains out-of-range vertices")
    dist = [INFINITY] * D.n
    for v in _bits(start):
        dist[v] = 0
    cover = start
    frontier = start
    d = 0
    while frontier:
        acc = 0
        for v in _bits(frontier):
            acc |= D.out_masks[v]
        frontier = acc & ~cover
        cover |= frontier
        d += 1
        for v in _bits(frontier):
            dist[v] = d
    return DistanceTable(source=_set(start), dist=tuple(dist))


def reachable_within(D: Digraph, S: Iterable[int], q: int) -> frozenset[int]:
    """Vertices at directed distance at most q from S (S itself included)."""
    cover = _mask(S)
    frontier = cover
    for _ in range(q):
        acc = 0
        for v in _bits(frontier):
            acc |= D.out_masks[v]
        frontier = acc & ~cover
        if not frontier:
            break
        cover |= frontier
    return _set(cover)


def is_independent(D: Digraph, S: Iterable[int]) -> bool:
    """True iff no arc joins two vertices of S, in either direction."""
    m = _mask(S)
    for v in _bits(m):
        if D.und_masks[v] & m:
            return False
    return True


def dependent_arc(D: Digraph, S: Iterable[int]) -> tuple[int, int] | None:
    """Lexicographically least arc with both endpoints in S, or None."""
    m = _mask(S)
    for u, v in D.arcs:
        if (m >> u) & 1 and (m >> v) & 1:
            return (u, v)
    return None


def degree_stats(D: Digraph) -> DegreeStats:
    """Minimum in-degree, maximum out-degree, and the set of sources.

    A digraph is source-free exactly when the source set is empty, which for
    nonempty digraphs is the same as minimum in-degree at least 1.
    """
    if D.n == 0:
        return DegreeStats(0, 0, frozenset())
    min_in = min(m.bit_count() for m in D.in_masks)
    max_out = max(m.bit_count() for m in D.out_masks)
    sources = frozenset(v for v in range(D.n) if not D.in_masks[v])
    return DegreeStats(min_in, max_out, sources)


def is_source_free(D: Digraph) -> bool:
    return all(D.in_masks[v] for v in range(D.n))


def strongly_connected_components(D: Digraph) -> tuple[frozenset[int], ...]:
    """SCC partition via iterative Tarjan, reported sorted by least vertex."""
    n = D.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[frozenset[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            adj = D.out_adj[v]
            while pi < len(adj):
                w = adj[pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    comps.sort(key=min)
    return tuple(comps)


def scc_diameter(D: Digraph, component: Iterable[int]) -> int:
    """max dist(u, v) over ordered pairs inside one strongly connected set.

    Distances are taken inside the induced subgraph, which agrees with
    distances in D when the set is a strongly connected component.
    """
    comp = sorted(component)
    H, _ = induced_subdigraph(D, comp)
    best = 0
    for v in range(H.n):
        table = distances_from(H, [v])
        ecc = table.eccentricity()
        if ecc == INFINITY:
            raise PreconditionError("set is not strongly connected")
        best = max(best, int(ecc))
    return best


def directed_cycle_lengths(D: Digraph, cap: int | None = None) -> frozenset[int]:
    """All lengths L <= cap of simple directed cycles in D.

    Exhaustive DFS over simple paths, rooted at the least vertex of each
    cycle; intended for small digraphs.  cap defaults to n.
    """
    n = D.n
    if cap is None:
        cap = n
    if cap > n:
        raise PreconditionError(f"cycle-length cap {cap} exceeds n={n}")
    lengths: set[int] = set()
    if cap < 2:
        return frozenset()
    out = D.out_adj
    for root in range(n):
        def dfs(v: int, depth: int, onpath: int) -> None:
            for w in out[v]:
                if w == root:
                    lengths.add(depth)
                elif w > root and not (onpath >> w) & 1 and depth < cap:
                    dfs(w, depth + 1, onpath | (1 << w))
        dfs(root, 1, 1 << root)
    return frozenset(lengths)


def has_short_cycle(D: Digraph, below: int) -> bool:
    """True iff D has a directed cycle of length strictly less than `below`."""
    cap = min(below - 1, D.n)
    if cap < 2:
        return False
    return bool(directed_cycle_lengths(D, cap))


def find_bipartition(D: Digraph) -> Bipartition | None:
    """2-color the underlying graph with all arcs crossing, or None.

    Deterministic: the least vertex of each underlying component lands in U.
    """
    n = D.n
    color = [-1] * n
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in _bits(D.und_masks[v]):
                if color[w] == -1:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    u = frozenset(v for v in range(n) if color[v] == 0)
    return Bipartition(u=u, v=frozenset(range(n)) - u)


def induced_subdigraph(D: Digraph, keep: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
    """Induced subgraph on `keep`, relabeled densely in sorted order.

    Returns (H, old_of_new) where old_of_new[i] is the original label of
    vertex i of H.
    """
    old = tuple(sorted(set(keep)))
    if old and not (0 <= old[0] and old[-1] < D.n):
        raise PreconditionError("keep set contains out-of-range vertices")
    new_of_old = {o: i for i, o in enumerate(old)}
    m = _mask(old)
    arcs = [(new_of_old[u], new_of_old[v]) for u, v in D.arcs
            if (m >> u) & 1 and (m >> v) & 1]
    return Digraph(len(old), arcs, _validated=True), old


def delete_vertices(D: Digraph, drop: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
    """Complement of induced_subdigraph: remove `drop` and relabel."""
    gone = set(drop)
    return induced_subdigraph(D, (v for v in range(D.n) if v not in gone))


def add_arcs(D: Digraph, extra: Iterable[tuple[int, int]]) -> Digraph:
    """A new digraph with additional arcs; duplicates and loops are rejected."""
    return build_digraph(D.n, D.arcs + tuple(extra))


def disjoint_union(*parts: Digraph) -> Digraph:
    """Disjoint union, relabeling each part after the previous ones."""
    arcs: list[tuple[int, int]] = []
    offset = 0
    for part in parts:
        arcs.extend((u + offset, v + offset) for u, v in part.arcs)
        offset += part.n
    return Digraph(offset, arcs, _validated=True)


# ---------------------------------------------------------------------------
# Canonical text format: '#' comment lines, "n <count>", then one "u v" arc
# per line.  The writer emits arcs in lexicographic order.
# ---------------------------------------------------------------------------

def digraph_to_text(D: Digraph) -> str:
    lines = [f"n {D.n}"]
    lines.extend(f"{u} {v}" for u, v in D.arcs)
    return "\n".join(lines) + "\n"


def _token_column(raw: str, token_index: int) -> int:
    col = 0
    seen = 0
    in_token = False
    for i, ch in enumerate(raw):
        if ch.isspace():
            in_token = False
        elif not in_token:
            in_token = True
            if seen == token_index:
                return i + 1
            seen += 1
    return len(raw) + 1


def digraph_from_text(text: str) -> Digraph:
    n: int | None = None
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if n is None:
            if tokens[0] != "n" or len(tokens) != 2:
                raise DigraphFormatError("expected header 'n <count>'",
                                         lineno, _token_column(raw, 0))
            try:
                n = int(tokens[1])
            except ValueError:
                raise DigraphFormatError(f"vertex count {tokens[1]!r} is not an integer",
                                         lineno, _token_column(raw, 1)) from None
            if n < 0:
                raise DigraphFormatError("vertex count must be nonnegative",
                                         lineno, _token_column(raw, 1))
            continue
        if len(tokens) != 2:
            raise DigraphFormatError("expected an arc line 'u v'",
                                     lineno, _token_column(raw, min(len(tokens), 2) - 1))
        pair: list[int] = []
        for k, tok in enumerate(tokens):
            try:
                pair.append(int(tok))
            except ValueError:
                raise DigraphFormatError(f"vertex {tok!r} is not an integer",
                                         lineno, _token_column(raw, k)) from None
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphFormatError(f"arc ({u}, {v}) out of range for n={n}",
                                     lineno, _token_column(raw, 0))
        if u == v:
            raise DigraphFormatError(f"self-loop ({u}, {v})",
                                     lineno, _token_column(raw, 0))
        if (u, v) in seen:
            raise DigraphFormatError(f"duplicate arc ({u}, {v})",
                                     lineno, _token_column(raw, 0))
        seen.add((u, v))
        arcs.append((u, v))
    if n is None:
        raise DigraphFormatError("missing 'n <count>' header", 1, 1)
    return Digraph(n, arcs, _validated=True)


def read_digraph(path: str) -> Digraph:
    with open(path, "r", encoding="utf-8") as fh:
        return digraph_from_text(fh.read())


def write_digraph(D: Digraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(digraph_to_text(D))
