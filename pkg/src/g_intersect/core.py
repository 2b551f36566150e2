"""
Graph and subset primitives: constructors, degree/clique statistics, k-subset enumeration,
exact binomials and closed neighborhoods.
"""

from __future__ import annotations

import logging
from itertools import combinations
from math import comb
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .models import MAX_GRAPH_VERTICES, Graph, InputError, VertexSet


logger = logging.getLogger(__name__)


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); 0 when k > n."""
    if n < 0 or k < 0:
        raise InputError(f"binomial({n}, {k}) needs nonnegative arguments")
    return comb(n, k)


def enumerate_ksubsets(n: int, k: int) -> List[VertexSet]:
    """All k-subsets of {0..n-1} in lexicographic order of their sorted element lists.

    The position of a subset in this list is its canonical id.
    """
    if k < 0 or k > n:
        raise InputError(f"Cannot enumerate {k}-subsets of a {n}-set")
    return [VertexSet.of(c) for c in combinations(range(n), k)]


def _colex_rank(sorted_elems: Sequence[int]) -> int:
    return sum(comb(c, j + 1) for j, c in enumerate(sorted_elems))


def _colex_unrank(r: int, n: int, k: int) -> List[int]:
    out = [0] * k
    while k > 0:
        n -= 1
        offset = comb(n, k)
        if r >= offset:
            r -= offset
            k -= 1
            out[k] = n
    return out


def rank_ksubset(x: VertexSet, n: int) -> int:
    """Canonical id of ``x`` among the |x|-subsets of {0..n-1} (lexicographic order)."""
    elems = x.sorted()
    if elems and elems[-1] >= n:
        raise InputError(f"{x!r} is not a subset of 0..{n - 1}")
    mirrored = [n - 1 - c for c in reversed(elems)]
    return comb(n, len(elems)) - 1 - _colex_rank(mirrored)


def unrank_ksubset(r: int, n: int, k: int) -> VertexSet:
    """Inverse of :func:`rank_ksubset`."""
    total = comb(n, k)
    if not 0 <= r < total:
        raise InputError(f"Rank {r} out of range for {k}-subsets of a {n}-set")
    mirrored = _colex_unrank(total - 1 - r, n, k)
    return VertexSet.of(n - 1 - c for c in mirrored)


# --- Graph constructors ---


def _check_order(n: int, max_vertices: int) -> None:
    if n < 1:
        raise InputError(f"Graph needs at least one vertex, got n={n}")
    if n > max_vertices:
        raise InputError(f"n={n} exceeds the configured vertex maximum {max_vertices}")


def _from_rows(n: int, rows: List[int], name: str) -> Graph:
    return Graph(n=n, adj=tuple(VertexSet(r) for r in rows), name=name)


def from_edge_list(
    n: int,
    pairs: Iterable[Tuple[int, int]],
    *,
    name: str = "",
    max_vertices: int = MAX_GRAPH_VERTICES,
) -> Graph:
    """Build a graph from (u, v) pairs. Duplicate edges are idempotent."""
    _check_order(n, max_vertices)
    rows = [0] * n
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"Edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise InputError(f"Self-loop ({u},{v}) is not allowed")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return _from_rows(n, rows, name or f"graph:{n}")


def empty_graph(n: int, *, max_vertices: int = MAX_GRAPH_VERTICES) -> Graph:
    _check_order(n, max_vertices)
    return _from_rows(n, [0] * n, f"empty:{n}")


def complete_graph(n: int, *, max_vertices: int = MAX_GRAPH_VERTICES) -> Graph:
    _check_order(n, max_vertices)
    full = (1 << n) - 1
    return _from_rows(n, [full & ~(1 << v) for v in range(n)], f"complete:{n}")


def path_graph(n: int, *, max_vertices: int = MAX_GRAPH_VERTICES) -> Graph:
    return from_edge_list(
        n, [(v, v + 1) for v in range(n - 1)], name=f"path:{n}", max_vertices=max_vertices
    )


def cycle_graph(n: int, *, max_vertices: int = MAX_GRAPH_VERTICES) -> Graph:
    """C_n: u ~ v iff u - v is 1 or n - 1 mod n."""
    if n < 3:
        raise InputError(f"cycle_graph needs n >= 3, got {n}")
    return from_edge_list(
        n, [(v, (v + 1) % n) for v in range(n)], name=f"cycle:{n}", max_vertices=max_vertices
    )


BUILTIN_GRAPHS: Dict[str, Callable[..., Graph]] = {
    "empty": empty_graph,
    "cycle": cycle_graph,
    "path": path_graph,
    "complete": complete_graph,
}


def builtin_graph(kind: str, n: int, *, max_vertices: int = MAX_GRAPH_VERTICES) -> Graph:
    try:
        ctor = BUILTIN_GRAPHS[kind]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_GRAPHS))
        raise InputError(f"Unknown builtin graph '{kind}' (known: {known})") from None
    return ctor(n, max_vertices=max_vertices)


def with_edges(g: Graph, pairs: Iterable[Tuple[int, int]]) -> Graph:
    """Supergraph of ``g`` on the same vertices with the extra edges added."""
    return from_edge_list(
        g.n, list(g.edges()) + list(pairs), name=f"{g.label()}+", max_vertices=max(g.n, 1)
    )


# --- Statistics ---


def max_degree(g: Graph) -> int:
    """Delta(G); 0 for edgeless graphs."""
    return max(len(row) for row in g.adj)


def min_degree(g: Graph) -> int:
    return min(len(row) for row in g.adj)


def _greedy_color_bound(g: Graph, candidates: int) -> int:
    """Number of colors a greedy coloring uses on ``candidates``: an upper bound on any clique."""
    colors = 0
    uncolored = candidates
    while uncolored:
        colors += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            uncolored &= ~low
            available &= ~low & ~g.adj[v].bits
    return colors


def clique_number(g: Graph) -> Tuple[int, List[VertexSet]]:
    """omega(G) and every maximum clique, sorted.

    Bron-Kerbosch with pivoting, pruned by a greedy coloring bound. Slow on large dense graphs.
    """
    best = 1
    found: List[int] = []
    adj = [row.bits for row in g.adj]

    def expand(r: int, r_size: int, p: int, x: int) -> None:
        nonlocal best, found
        if not p:
            if not x:
                if r_size > best:
                    best, found = r_size, [r]
                elif r_size == best:
                    found.append(r)
            return
        if r_size + _greedy_color_bound(g, p) < best:
            return
        union = p | x
        pivot, pivot_cover = -1, -1
        scan = union
        while scan:
            low = scan & -scan
            u = low.bit_length() - 1
            cover = (adj[u] & p).bit_count()
            if cover > pivot_cover:
                pivot, pivot_cover = u, cover
            scan ^= low
        branch = p & ~adj[pivot]
        while branch:
            low = branch & -branch
            v = low.bit_length() - 1
            expand(r | low, r_size + 1, p & adj[v], x & adj[v])
            p &= ~low
            x |= low
            branch ^= low

    expand(0, 0, g.vertices.bits, 0)
    cliques = sorted((VertexSet(c) for c in found), key=lambda c: c.sorted())
    logger.debug(f"clique_number({g.label()}) = {best} with {len(cliques)} maximum clique(s)")
    return best, cliques


def closed_neighborhood(g: Graph, x: VertexSet) -> VertexSet:
    """N(X): X together with every vertex adjacent to some member of X."""
    bits = x.bits
    for v in x:
        bits |= g.adj[v].bits
    return VertexSet(bits)
