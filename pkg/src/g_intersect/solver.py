"""
Exact N(G, k) on desk-scale instances.

A family of k-sets is G-intersecting exactly when it is an independent set of the conflict
graph, whose vertices are the k-subsets and whose edges join pairs that fail to G-intersect.
For sparse G that graph is sparse, so the search is a maximum independent set branch-and-bound
on it.
"""

from __future__ import annotations

import logging
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

from .bounds import (
    conjecture_constant,
    cycle_formula,
    lemma1_threshold,
    lemma2_threshold,
    theorem2_bound,
)
from .core import (
    binomial,
    clique_number,
    closed_neighborhood,
    cycle_graph,
    enumerate_ksubsets,
    max_degree,
)
from .family import (
    augment_clique_family,
    build_cycle_extremal,
    cover_number,
    cycle_extremal_size,
    full_degree_vertices,
    g_intersects,
    is_g_intersecting,
    neighborhood_hypergraph,
)
from .models import (
    CapacityError,
    ConflictGraph,
    Graph,
    Hypergraph,
    InputError,
    InvariantError,
    SolveResult,
    SolveStats,
    StructureReport,
    SweepRow,
    VertexSet,
)


logger = logging.getLogger(__name__)

DEFAULT_VERTEX_BUDGET = 100_000
NAIVE_GUARD = 150
SWEEP_MODES = ("exact", "bounds-only")


# --- Conflict graph ---


def _check_instance(g: Graph, k: int, budget: int) -> int:
    if not 1 <= k <= g.n:
        raise InputError(f"k={k} out of range 1..{g.n}")
    total = binomial(g.n, k)
    if total > budget:
        raise CapacityError(
            f"C({g.n},{k}) = {total} k-subsets exceed the vertex budget {budget}",
            required=total,
            limit=budget,
        )
    return total


def build_conflict_graph(
    g: Graph, k: int, *, budget: int = DEFAULT_VERTEX_BUDGET
) -> ConflictGraph:
    """Conflict graph over the canonical k-subset order.

    Row i lists the k-subsets avoiding N(set_i) entirely; those are exactly the sets that fail
    to G-intersect set_i.
    """
    total = _check_instance(g, k, budget)
    subsets = enumerate_ksubsets(g.n, k)
    index = {s.bits: i for i, s in enumerate(subsets)}
    rows: List[int] = []
    for s in subsets:
        outside = (g.vertices - closed_neighborhood(g, s)).sorted()
        row = bytearray(total // 8 + 1)
        for combo in combinations(outside, k):
            bits = 0
            for v in combo:
                bits |= 1 << v
            j = index[bits]
            row[j >> 3] |= 1 << (j & 7)
        rows.append(int.from_bytes(row, "little"))
    conflict = ConflictGraph(n=g.n, k=k, subsets=tuple(subsets), conflict_adj=rows)
    logger.debug(
        f"Conflict graph for {g.label()}, k={k}: {total} vertices, "
        f"{conflict.num_conflicts} conflict edges"
    )
    return conflict


# --- Branch-and-bound core ---


def _pick_branch_vertex(adj: List[int], cand: int) -> Tuple[int, int]:
    """Maximum conflict degree inside ``cand``; ties go to the lowest index."""
    best_v, best_deg = -1, -1
    scan = cand
    while scan:
        low = scan & -scan
        v = low.bit_length() - 1
        deg = (adj[v] & cand).bit_count()
        if deg > best_deg:
            best_v, best_deg = v, deg
        scan ^= low
    return best_v, best_deg


def _clique_cover_bound(adj: List[int], cand: int, limit: int) -> int:
    """Greedy partition of ``cand`` into conflict cliques; stops counting past ``limit``.

    An independent set takes at most one vertex per clique.
    """
    count = 0
    rest = cand
    while rest and count <= limit:
        low = rest & -rest
        rest ^= low
        pool = rest & adj[low.bit_length() - 1]
        while pool:
            nxt = pool & -pool
            rest ^= nxt
            pool &= adj[nxt.bit_length() - 1]
        count += 1
    return count


def _greedy_independent(adj: List[int], cand: int) -> int:
    """Minimum-degree greedy independent set, a starting lower bound."""
    chosen = 0
    while cand:
        best_v, best_deg = -1, -1
        scan = cand
        while scan:
            low = scan & -scan
            v = low.bit_length() - 1
            deg = (adj[v] & cand).bit_count()
            if best_deg < 0 or deg < best_deg:
                best_v, best_deg = v, deg
            scan ^= low
        chosen |= 1 << best_v
        cand &= ~(1 << best_v) & ~adj[best_v]
    return chosen


def _branch_and_bound(
    adj: List[int],
    root: Tuple[int, int, int],
    best_size: int,
    best_set: Optional[int],
    shared=None,
) -> Tuple[int, Optional[int], int]:
    """Depth-first search from ``root`` = (candidates, chosen, size).

    Returns (best size, best set or None if nothing beat the incoming bound, nodes explored).
    ``shared`` is an optional synchronized integer holding the best size across processes.
    """
    nodes = 0
    stack = [root]
    while stack:
        cand, chosen, size = stack.pop()
        nodes += 1
        if shared is not None and shared.value > best_size:
            best_size = shared.value
        remaining = cand.bit_count()
        if size + remaining <= best_size:
            continue
        v, deg = _pick_branch_vertex(adj, cand)
        if deg == 0:
            best_size, best_set = size + remaining, chosen | cand
            if shared is not None:
                with shared.get_lock():
                    if best_size > shared.value:
                        shared.value = best_size
            continue
        if size + _clique_cover_bound(adj, cand, best_size - size) <= best_size:
            continue
        low = 1 << v
        stack.append((cand & ~low & ~adj[v], chosen | low, size + 1))
        stack.append((cand & ~low, chosen, size))
    return best_size, best_set, nodes


def _expand_frontier(adj: List[int], cand: int, target: int) -> List[Tuple[int, int, int]]:
    """Split the top of the search tree into at least ``target`` subproblems (when possible)."""
    frontier = [(cand, 0, 0)]
    while len(frontier) < target:
        grown: List[Tuple[int, int, int]] = []
        for node_cand, chosen, size in frontier:
            v, deg = _pick_branch_vertex(adj, node_cand)
            if v < 0 or deg == 0:
                grown.append((node_cand, chosen, size))
                continue
            low = 1 << v
            grown.append((node_cand & ~low, chosen, size))
            grown.append((node_cand & ~low & ~adj[v], chosen | low, size + 1))
        if len(grown) == len(frontier):
            break
        frontier = grown
    return frontier


_WORKER_ADJ: List[int] = []
_WORKER_BEST = None


def _init_worker(adj: List[int], shared) -> None:
    global _WORKER_ADJ, _WORKER_BEST
    _WORKER_ADJ = adj
    _WORKER_BEST = shared


def _solve_subproblem(root: Tuple[int, int, int]) -> Tuple[int, Optional[int], int]:
    return _branch_and_bound(_WORKER_ADJ, root, _WORKER_BEST.value, None, _WORKER_BEST)


def max_independent_set(
    adj: List[int], num_vertices: int, workers: int = 1, seed: int = 0
) -> Tuple[int, int, int]:
    """Exact maximum independent set of a bitset graph: (size, set bitmask, nodes explored).

    ``seed`` is an independent set used as the incumbent when it is at least as large as the
    greedy one. Only strictly larger sets replace the incumbent, so an optimal seed is returned.
    With ``workers`` > 1 the top of the tree is split across processes that share the best size;
    the size is deterministic, the returned set may vary between runs.
    """
    everything = (1 << num_vertices) - 1
    greedy = _greedy_independent(adj, everything)
    incumbent = seed if seed.bit_count() >= greedy.bit_count() else greedy
    best_size, best_set = incumbent.bit_count(), incumbent
    if workers <= 1:
        size, found, nodes = _branch_and_bound(adj, (everything, 0, 0), best_size, None)
        return size, found if found is not None else best_set, nodes

    frontier = _expand_frontier(adj, everything, workers * 4)
    shared = multiprocessing.Value("q", best_size)
    total_nodes = 0
    logger.debug(f"Parallel search: {len(frontier)} subproblem(s) on {workers} worker(s)")
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_init_worker, initargs=(adj, shared)
    ) as pool:
        for size, found, nodes in pool.map(_solve_subproblem, frontier):
            total_nodes += nodes
            if found is not None and size > best_size:
                best_size, best_set = size, found
    return best_size, best_set, total_nodes


# --- Public solvers ---


def _structured_seed(g: Graph, k: int, conflict: ConflictGraph) -> int:
    """Largest augmented H_K over the maximum cliques K, completed greedily to a maximal set."""
    if k < 2:
        return 0
    index = {s.bits: i for i, s in enumerate(conflict.subsets)}
    adj = conflict.conflict_adj
    everything = (1 << conflict.num_sets) - 1
    best = 0
    _, cliques = clique_number(g)
    for clique in cliques:
        mask = 0
        blocked = 0
        for e in augment_clique_family(g, clique, k).edges:
            i = index[e.bits]
            mask |= 1 << i
            blocked |= adj[i]
        mask |= _greedy_independent(adj, everything & ~mask & ~blocked)
        if mask.bit_count() > best.bit_count():
            best = mask
    logger.debug(f"Clique-anchored seed for {g.label()}, k={k}: {best.bit_count()} sets")
    return best


def _witness(conflict: ConflictGraph, mask: int) -> Hypergraph:
    edges = []
    while mask:
        low = mask & -mask
        edges.append(conflict.subsets[low.bit_length() - 1])
        mask ^= low
    return Hypergraph(conflict.n, tuple(edges), conflict.k)


def certify(g: Graph, result: SolveResult, conflict: Optional[ConflictGraph] = None) -> None:
    """Check the witness: G-intersecting, of size ``value``, and maximal under inclusion."""
    witness = result.witness
    if len(witness) != result.value:
        raise InvariantError(f"Witness has {len(witness)} sets but value is {result.value}")
    if not is_g_intersecting(g, witness):
        raise InvariantError(f"Witness for {g.label()}, k={result.k} is not G-intersecting")
    conflict = conflict or build_conflict_graph(g, result.k, budget=binomial(g.n, result.k))
    members = witness.as_set()
    mask = 0
    for i, s in enumerate(conflict.subsets):
        if s in members:
            mask |= 1 << i
    for i, s in enumerate(conflict.subsets):
        if s not in members and not conflict.conflict_adj[i] & mask:
            raise InvariantError(f"Witness is not maximal: {s!r} can be added")


def solve_exact(
    g: Graph, k: int, *, budget: int = DEFAULT_VERTEX_BUDGET, workers: int = 1
) -> SolveResult:
    """N(G, k) by maximum independent set search on the conflict graph.

    Branches on a maximum-conflict-degree k-set (exclude first) and prunes with the
    remaining-count and greedy clique-cover bounds. The search starts from the best
    augmented clique family and only a strictly larger family replaces it, so an optimal
    augmented family is the witness.
    """
    if workers < 1:
        raise InputError(f"Worker count must be at least 1, got {workers}")
    started = time.perf_counter()
    conflict = build_conflict_graph(g, k, budget=budget)
    seed = _structured_seed(g, k, conflict)
    value, mask, nodes = max_independent_set(
        conflict.conflict_adj, conflict.num_sets, workers, seed=seed
    )
    result = SolveResult(
        graph=g.label(),
        n=g.n,
        k=k,
        value=value,
        witness=_witness(conflict, mask),
        stats=SolveStats(
            nodes=nodes,
            wall_time=time.perf_counter() - started,
            workers=workers,
            conflicts=conflict.num_conflicts,
        ),
    )
    certify(g, result, conflict)
    logger.info(
        f"N({g.label()}, {k}) = {value} ({nodes} nodes, {result.stats.wall_time:.3f}s, "
        f"{workers} worker(s))"
    )
    return result


def naive_solve(g: Graph, k: int) -> SolveResult:
    """Independent oracle: pairwise predicate, lowest-index include/exclude recursion.

    Shares no ordering or bound with :func:`solve_exact` and prunes nothing. Subproblems are
    memoized on their candidate set, and candidates without a clash among the remaining ones
    are always taken.
    """
    if not 1 <= k <= g.n:
        raise InputError(f"k={k} out of range 1..{g.n}")
    total = binomial(g.n, k)
    if total > NAIVE_GUARD:
        raise CapacityError(
            f"naive_solve is limited to C(n,k) <= {NAIVE_GUARD}; C({g.n},{k}) = {total}",
            required=total,
            limit=NAIVE_GUARD,
        )
    started = time.perf_counter()
    subsets = enumerate_ksubsets(g.n, k)
    clashes = [0] * total
    for i, j in combinations(range(total), 2):
        if not g_intersects(g, subsets[i], subsets[j]):
            clashes[i] |= 1 << j
            clashes[j] |= 1 << i

    memo: Dict[int, Tuple[int, int]] = {0: (0, 0)}

    def best(cand: int) -> Tuple[int, int]:
        """(size, bitmask) of a maximum independent subset of ``cand``."""
        if cand in memo:
            return memo[cand]
        free = 0
        scan = cand
        while scan:
            low = scan & -scan
            if not clashes[low.bit_length() - 1] & cand:
                free |= low
            scan ^= low
        rest = cand & ~free
        size, chosen = 0, 0
        if rest:
            low = rest & -rest
            v = low.bit_length() - 1
            with_v, with_set = best(rest & ~low & ~clashes[v])
            without_v, without_set = best(rest & ~low)
            if with_v + 1 >= without_v:
                size, chosen = with_v + 1, with_set | low
            else:
                size, chosen = without_v, without_set
        memo[cand] = (size + free.bit_count(), chosen | free)
        return memo[cand]

    best_size, best_set = best((1 << total) - 1)
    nodes = len(memo)
    edges = tuple(subsets[i] for i in range(total) if (best_set >> i) & 1)
    result = SolveResult(
        graph=g.label(),
        n=g.n,
        k=k,
        value=best_size,
        witness=Hypergraph(g.n, edges, k),
        stats=SolveStats(nodes=nodes, wall_time=time.perf_counter() - started),
        method="naive",
    )
    logger.debug(f"naive N({g.label()}, {k}) = {best_size} ({nodes} nodes)")
    return result


def min_vertex_cover_size(conflict: ConflictGraph) -> int:
    """Minimum vertex cover of the conflict graph, via the hypergraph cover search."""
    edges = []
    for i, row in enumerate(conflict.conflict_adj):
        upper = row >> (i + 1)
        while upper:
            low = upper & -upper
            j = i + low.bit_length()
            edges.append(VertexSet((1 << i) | (1 << j)))
            upper ^= low
    tau, _ = cover_number(Hypergraph(conflict.num_sets, tuple(edges), 2))
    return tau


# --- Structure ---


def verify_extremal_structure(g: Graph, k: int, result: SolveResult) -> StructureReport:
    """Test each maximum clique K for H_K being contained in the witness.

    Reports, never asserts. Threshold verdicts are included alongside.
    """
    n = g.n
    omega, cliques = clique_number(g)
    delta = max_degree(g)
    witness = result.witness
    qualifying = []
    for clique in cliques:
        needed = binomial(n, k) - binomial(n - len(clique), k)
        meeting = sum(1 for e in witness.edges if not e.isdisjoint(clique))
        if meeting == needed:
            qualifying.append(clique)

    bound = theorem2_bound(n, k, delta, omega) if k >= 2 else None
    full_degree = full_degree_vertices(witness, n, k)
    tau = None
    if witness.edges:
        tau, _ = cover_number(neighborhood_hypergraph(g, witness))
    report = StructureReport(
        value=result.value,
        omega=omega,
        max_cliques=cliques,
        qualifying_cliques=qualifying,
        theorem2_bound=bound,
        within_theorem2_bound=None if bound is None else result.value <= bound,
        lemma1_ok=lemma1_threshold(n, delta, omega, k),
        lemma2_ok=lemma2_threshold(n, delta, k) if delta >= 1 else None,
        clique_separation=n > (delta + 2) * k,
        witness_tau=tau,
        full_degree_vertices=full_degree,
        full_degree_is_clique=g.is_clique(full_degree),
    )
    logger.info(
        f"Structure of N({g.label()}, {k}) witness: {len(qualifying)}/{len(cliques)} maximum "
        f"clique(s) qualify, tau(F)={tau}"
    )
    return report


# --- Cycle sweep ---


def sweep_cycle(
    n_lo: int,
    n_hi: int,
    k_lo: int,
    k_hi: int,
    mode: str = "bounds-only",
    *,
    budget: int = DEFAULT_VERTEX_BUDGET,
    workers: int = 1,
) -> Iterator[SweepRow]:
    """Rows for every n in [n_lo, n_hi], k in [k_lo, k_hi] with k <= n, produced lazily.

    Capacity failures in exact mode are recorded in the row and the sweep continues.
    """
    if mode not in SWEEP_MODES:
        raise InputError(f"Unknown sweep mode '{mode}' (expected one of {', '.join(SWEEP_MODES)})")
    if n_lo > n_hi or k_lo > k_hi:
        raise InputError(f"Empty sweep range n={n_lo}..{n_hi}, k={k_lo}..{k_hi}")
    if n_lo < 6 or k_lo < 2:
        raise InputError(f"Cycle sweeps need n >= 6 and k >= 2, got n>={n_lo}, k>={k_lo}")

    reference = conjecture_constant(2)
    for n in range(n_lo, n_hi + 1):
        for k in range(k_lo, min(k_hi, n) + 1):
            yield _sweep_cell(n, k, mode, budget, workers, reference)


def _sweep_cell(
    n: int, k: int, mode: str, budget: int, workers: int, reference: float
) -> SweepRow:
    total = binomial(n, k)
    formula = cycle_formula(n, k)
    exact: Optional[int] = None
    nodes: Optional[int] = None
    wall: Optional[float] = None
    error: Optional[str] = None
    if mode == "exact" and total <= budget:
        construction = len(build_cycle_extremal(n, k))
    else:
        construction = cycle_extremal_size(n, k)

    if mode == "bounds-only":
        status = "bounds-only"
    else:
        try:
            result = solve_exact(cycle_graph(n), k, budget=budget, workers=workers)
            exact, nodes, wall = result.value, result.stats.nodes, result.stats.wall_time
            status = "match" if exact == formula else "differs"
        except (CapacityError, InputError) as e:
            status, error = "capacity", str(e)
            logger.warning(f"Sweep cell n={n}, k={k} skipped: {e}")

    value = exact if exact is not None else formula
    row = SweepRow(
        n=n,
        k=k,
        formula=formula,
        construction=construction,
        exact=exact,
        ratio=float(Fraction(value, total)),
        k_over_n=k / n,
        status=status,
        conjecture_constant=reference,
        nodes=nodes,
        wall_time=wall,
        error=error,
    )
    logger.debug(f"Sweep row n={n}, k={k}: status={status}")
    return row
