"""
Hypergraph machinery: the G-intersection predicate, family validation, the neighborhood
hypergraph F = {N(h) : h in H}, its cover number tau, and the extremal constructions.
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .core import binomial, closed_neighborhood
from .models import Graph, Hypergraph, InputError, VertexSet


logger = logging.getLogger(__name__)


# --- G-intersection ---


def g_intersects(g: Graph, x: VertexSet, y: VertexSet) -> bool:
    """True iff x and y share a vertex or some edge of G joins them."""
    if not x or not y:
        raise InputError("G-intersection is undefined for empty sets")
    if x.bits & y.bits:
        return True
    return any(g.adj[v].bits & y.bits for v in x)


def _incidence_masks(edges: Sequence[VertexSet], n: int) -> List[int]:
    """Per vertex v, a bitmask over edge indices with bit i set iff v is in edges[i]."""
    width = len(edges) // 8 + 1
    rows = [bytearray(width) for _ in range(n)]
    for i, e in enumerate(edges):
        byte, bit = divmod(i, 8)
        for v in e:
            rows[v][byte] |= 1 << bit
    return [int.from_bytes(row, "little") for row in rows]


def _reach_masks(g: Graph, edges: Sequence[VertexSet]) -> List[int]:
    """Per vertex u, the edge indices whose edge meets N(u)."""
    incidence = _incidence_masks(edges, g.n)
    reach = []
    for u in range(g.n):
        mask = incidence[u]
        for w in g.adj[u]:
            mask |= incidence[w]
        reach.append(mask)
    return reach


def _first_cross_failure(
    g: Graph, left: Sequence[VertexSet], right: Sequence[VertexSet]
) -> Optional[Tuple[VertexSet, VertexSet]]:
    """A pair (a, b) in left x right that fails to G-intersect, or None."""
    if not left or not right:
        return None
    reach = _reach_masks(g, right)
    everything = (1 << len(right)) - 1
    for a in left:
        met = 0
        for u in a:
            met |= reach[u]
        if met != everything:
            missed = everything & ~met
            j = (missed & -missed).bit_length() - 1
            return a, right[j]
    return None


def is_g_intersecting(g: Graph, h: Hypergraph) -> bool:
    """True iff every pair of edges of ``h`` G-intersects. The empty family qualifies."""
    edges = list(h.edges)
    if any(not e for e in edges):
        raise InputError("Families with an empty edge are not G-intersecting families")
    failure = _first_cross_failure(g, edges, edges)
    if failure is not None:
        logger.debug(f"Not G-intersecting on {g.label()}: {failure[0]!r} vs {failure[1]!r}")
    return failure is None


# --- Neighborhood hypergraph and covers ---


def neighborhood_hypergraph(g: Graph, h: Hypergraph) -> Hypergraph:
    """F = {N(h) : h in H}, duplicates removed (distinct edges may share a neighborhood)."""
    f = dict.fromkeys(closed_neighborhood(g, e) for e in h.edges)
    return Hypergraph(g.n, tuple(f), None)


def restrict_to_vertex(h: Hypergraph, v: int) -> Hypergraph:
    """H_v = {e in H : v in e}."""
    return Hypergraph(h.ground_n, tuple(e for e in h.edges if v in e), h.uniform_k)


def restrict_to_superset(h: Hypergraph, y: VertexSet) -> Hypergraph:
    """H_Y = {e in H : Y is a subset of e}."""
    return Hypergraph(h.ground_n, tuple(e for e in h.edges if y <= e), h.uniform_k)


def check_cross_condition(g: Graph, h: Hypergraph) -> bool:
    """True iff every h in H meets every f in F = neighborhood_hypergraph(g, H)."""
    if not h.edges:
        return True
    f = neighborhood_hypergraph(g, h)
    incidence = _incidence_masks(h.edges, h.ground_n)
    everything = (1 << len(h)) - 1
    for nb in f.edges:
        met = 0
        for v in nb:
            met |= incidence[v]
        if met != everything:
            return False
    return True


def _greedy_cover(edges: List[int]) -> int:
    cover = 0
    remaining = list(edges)
    while remaining:
        counts: dict = {}
        for e in remaining:
            bits = e
            while bits:
                low = bits & -bits
                counts[low] = counts.get(low, 0) + 1
                bits ^= low
        pick = max(sorted(counts), key=lambda b: counts[b])
        cover |= pick
        remaining = [e for e in remaining if not e & pick]
    return cover


def _packing_bound(edges: List[int]) -> int:
    """Size of a greedy family of pairwise disjoint edges; each needs its own cover vertex."""
    used = 0
    count = 0
    for e in sorted(edges, key=lambda b: b.bit_count()):
        if not e & used:
            used |= e
            count += 1
    return count


def cover_number(h: Hypergraph) -> Tuple[int, VertexSet]:
    """Minimum cover size tau(h) and one witness cover.

    Branch-and-bound: branch on the vertices of a smallest uncovered edge, prune with a greedy
    disjoint-edge packing.
    """
    edges = [e.bits for e in h.edges]
    if any(b == 0 for b in edges):
        raise InputError("A hypergraph with an empty edge has no cover")
    best = _greedy_cover(edges)
    best_size = best.bit_count()
    nodes = 0

    def search(chosen: int, size: int, uncovered: List[int]) -> None:
        nonlocal best, best_size, nodes
        nodes += 1
        if not uncovered:
            if size < best_size:
                best, best_size = chosen, size
            return
        if size + _packing_bound(uncovered) >= best_size:
            return
        pivot = min(uncovered, key=lambda b: (b.bit_count(), b))
        bits = pivot
        while bits:
            low = bits & -bits
            search(chosen | low, size + 1, [e for e in uncovered if not e & low])
            bits ^= low

    search(0, 0, edges)
    logger.debug(f"cover_number: tau={best_size} after {nodes} node(s) over {len(edges)} edge(s)")
    return best_size, VertexSet(best)


# --- Constructions ---


def _family_where(n: int, k: int, keep) -> Hypergraph:
    edges = []
    for combo in combinations(range(n), k):
        bits = 0
        for v in combo:
            bits |= 1 << v
        if keep(bits):
            edges.append(VertexSet(bits))
    return Hypergraph(n, tuple(edges), k)


def build_clique_family(g: Graph, clique: VertexSet, k: int) -> Hypergraph:
    """H_K: every k-set meeting the clique K, in canonical order."""
    if not clique or not clique <= g.vertices or not g.is_clique(clique):
        raise InputError(f"{clique!r} is not a clique of {g.label()}")
    if not 1 <= k <= g.n:
        raise InputError(f"k={k} out of range 1..{g.n}")
    family = _family_where(g.n, k, lambda bits: bits & clique.bits)
    logger.debug(f"H_K for K={clique!r}, k={k} on {g.label()}: {len(family)} edges")
    return family


def star_family(n: int, k: int, v: int) -> Hypergraph:
    """All k-subsets of {0..n-1} containing v."""
    if not 0 <= v < n or not 1 <= k <= n:
        raise InputError(f"No star at {v} for k={k} on {n} vertices")
    return _family_where(n, k, lambda bits: (bits >> v) & 1)


def build_cycle_extremal(n: int, k: int) -> Hypergraph:
    """H_{1,2} together with every k-set containing {0,3}, on C_n.

    The 0-indexed images of the 1-indexed clique {2,3} and pair {1,4}.
    """
    if n < 6 or k < 2 or k > n:
        raise InputError(f"Cycle construction needs n >= 6 and 2 <= k <= n, got n={n}, k={k}")
    clique, pair = 0b0110, 0b1001
    family = _family_where(n, k, lambda bits: bits & clique or bits & pair == pair)
    logger.debug(f"Cycle construction n={n}, k={k}: {len(family)} edges")
    return family


def cycle_extremal_size(n: int, k: int) -> int:
    """Count of the cycle construction without materializing it: |H_K| plus the extra sets."""
    if n < 6 or k < 2:
        raise InputError(f"Cycle construction needs n >= 6 and k >= 2, got n={n}, k={k}")
    clique_part = binomial(n, k) - binomial(n - 2, k)
    extra_part = binomial(n - 4, k - 2)
    return clique_part + extra_part


def augment_clique_family(g: Graph, clique: VertexSet, k: int) -> Hypergraph:
    """Greedy lower-bound witness: H_K plus whole pair-blocks from the clique's outer ring.

    For each pair {u, v} in N(K) minus K, in lexicographic order, with K inside N({u, v}), the
    k-sets containing {u, v} and avoiding K are added together if the family stays
    G-intersecting. Exploratory; the result is not claimed to be maximum.
    """
    if k < 2:
        raise InputError(f"augment_clique_family needs k >= 2, got {k}")
    base = build_clique_family(g, clique, k)
    family: List[VertexSet] = list(base.edges)
    ring = closed_neighborhood(g, clique) - clique
    accepted = []
    for u, v in combinations(ring.sorted(), 2):
        pair = VertexSet.of((u, v))
        if not clique <= closed_neighborhood(g, pair):
            continue
        block = [
            e
            for e in _family_where(g.n, k, lambda bits: bits & pair.bits == pair.bits).edges
            if e.isdisjoint(clique)
        ]
        present = set(family)
        block = [e for e in block if e not in present]
        if not block:
            continue
        if _first_cross_failure(g, block, block) is None and (
            _first_cross_failure(g, family, block) is None
        ):
            family.extend(block)
            accepted.append(pair)
            logger.debug(f"Augmented with pair {pair!r}: +{len(block)} edges")
    family.sort(key=lambda e: e.sorted())
    logger.info(
        f"Augmented H_K (K={clique!r}, k={k}) on {g.label()}: {len(base)} -> {len(family)} edges, "
        f"pairs {accepted}"
    )
    return Hypergraph(g.n, tuple(family), k)


# --- Structure helpers ---


def vertex_degrees(h: Hypergraph) -> List[int]:
    degrees = [0] * h.ground_n
    for e in h.edges:
        for v in e:
            degrees[v] += 1
    return degrees


def full_degree_vertices(h: Hypergraph, n: int, k: int) -> VertexSet:
    """Vertices v whose H_v is the whole star, |H_v| = C(n-1, k-1)."""
    full = binomial(n - 1, k - 1)
    return VertexSet.of(v for v, d in enumerate(vertex_degrees(h)) if d == full)


def is_star(h: Hypergraph, n: int, k: int) -> Optional[int]:
    """Center v when ``h`` is exactly {X : v in X}; otherwise None."""
    if len(h) != binomial(n - 1, k - 1) or not h.edges:
        return None
    common = h.edges[0].bits
    for e in h.edges:
        common &= e.bits
    if not common:
        return None
    return (common & -common).bit_length() - 1
