"""
Data models for the G-intersecting hypergraph toolkit.

Vertices are 0-indexed throughout: the vertex set written [n] = {1..n} in the literature is
{0..n-1} here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple


MAX_GRAPH_VERTICES = 256


class GIntersectError(Exception):
    """Base exception for toolkit operations.

    ``code`` is the machine-readable token printed by the CLI; ``exit_status`` is the process
    exit status the CLI uses for this class of failure.
    """

    code = "error"
    exit_status = 1


class InputError(GIntersectError, ValueError):
    """Malformed input or a parameter outside an operation's domain."""

    code = "bad-input"
    exit_status = 2


class CapacityError(GIntersectError):
    """An instance exceeds a configured capacity (vertex budget or oracle guard)."""

    code = "capacity-exceeded"
    exit_status = 3

    def __init__(self, message: str, required: int = 0, limit: int = 0) -> None:
        super().__init__(message)
        self.required = required
        self.limit = limit


class InvariantError(GIntersectError):
    """A computed result failed its certificate check."""

    code = "invariant-failure"
    exit_status = 4


@dataclass(frozen=True)
class VertexSet:
    """Immutable set of vertices stored as an integer bitset."""

    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise InputError("VertexSet bits must be nonnegative")

    @classmethod
    def of(cls, vertices: Iterable[int]) -> VertexSet:
        bits = 0
        for v in vertices:
            if v < 0:
                raise InputError(f"Negative vertex id: {v}")
            bits |= 1 << v
        return cls(bits)

    @classmethod
    def full(cls, n: int) -> VertexSet:
        """Return {0..n-1}."""
        return cls((1 << n) - 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and (self.bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __or__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.bits & other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.bits & ~other.bits)

    def __le__(self, other: VertexSet) -> bool:
        return self.bits & ~other.bits == 0

    def __ge__(self, other: VertexSet) -> bool:
        return other <= self

    def isdisjoint(self, other: VertexSet) -> bool:
        return self.bits & other.bits == 0

    def add(self, v: int) -> VertexSet:
        return VertexSet(self.bits | (1 << v))

    def max_vertex(self) -> int:
        """Largest element, or -1 for the empty set."""
        return self.bits.bit_length() - 1

    def sorted(self) -> Tuple[int, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return "{" + ", ".join(str(v) for v in self) + "}"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on {0..n-1} with per-vertex bitset adjacency."""

    n: int
    adj: Tuple[VertexSet, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError(f"Graph needs at least one vertex, got n={self.n}")
        if len(self.adj) != self.n:
            raise InputError(f"Adjacency has {len(self.adj)} rows for n={self.n}")
        full = VertexSet.full(self.n)
        for u, row in enumerate(self.adj):
            if not row <= full:
                raise InputError(f"Vertex {u} has neighbors outside 0..{self.n - 1}")
            if u in row:
                raise InputError(f"Self-loop at vertex {u}")
            for v in row:
                if u not in self.adj[v]:
                    raise InputError(f"Adjacency is not symmetric for edge ({u},{v})")

    @property
    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def neighbors(self, v: int) -> VertexSet:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as (u, v) pairs with u < v, sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(row) for row in self.adj) // 2

    def is_clique(self, x: VertexSet) -> bool:
        return all(x - VertexSet.of([v]) <= self.adj[v] for v in x)

    def label(self) -> str:
        return self.name or f"graph:{self.n}"


@dataclass(frozen=True)
class Hypergraph:
    """Finite family of distinct vertex sets on {0..ground_n-1}, optionally k-uniform."""

    ground_n: int
    edges: Tuple[VertexSet, ...] = ()
    uniform_k: Optional[int] = None

    def __post_init__(self) -> None:
        if self.ground_n < 0:
            raise InputError(f"Ground set size must be nonnegative, got {self.ground_n}")
        full = VertexSet.full(self.ground_n)
        seen = set()
        for e in self.edges:
            if not e <= full:
                raise InputError(f"Edge {e!r} leaves the ground set 0..{self.ground_n - 1}")
            if e in seen:
                raise InputError(f"Duplicate edge {e!r}")
            seen.add(e)
            if self.uniform_k is not None and len(e) != self.uniform_k:
                raise InputError(f"Edge {e!r} does not have cardinality {self.uniform_k}")
        if self.uniform_k is not None and self.uniform_k >= 1 and not all(self.edges):
            raise InputError("Uniform families cannot contain the empty edge")

    @classmethod
    def from_sets(
        cls,
        ground_n: int,
        sets: Iterable[Iterable[int]],
        uniform_k: Optional[int] = None,
        *,
        dedupe: bool = False,
    ) -> Hypergraph:
        edges = [s if isinstance(s, VertexSet) else VertexSet.of(s) for s in sets]
        if dedupe:
            edges = list(dict.fromkeys(edges))
        return cls(ground_n, tuple(edges), uniform_k)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.edges)

    def __contains__(self, e: object) -> bool:
        return e in self._edge_set

    @property
    def _edge_set(self) -> frozenset:
        # cached lazily; frozen dataclass forbids plain attribute assignment
        cached = self.__dict__.get("_edges_cache")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edges_cache", cached)
        return cached

    def as_set(self) -> frozenset:
        return self._edge_set

    def sorted_edges(self) -> List[VertexSet]:
        return sorted(self.edges, key=lambda e: e.sorted())


@dataclass
class ConflictGraph:
    """Graph on the canonical indices of all k-subsets; i ~ j iff the sets fail to G-intersect."""

    n: int
    k: int
    subsets: Tuple[VertexSet, ...]
    conflict_adj: List[int]

    @property
    def num_sets(self) -> int:
        return len(self.subsets)

    @property
    def num_conflicts(self) -> int:
        return sum(row.bit_count() for row in self.conflict_adj) // 2

    def degree(self, i: int) -> int:
        return self.conflict_adj[i].bit_count()


@dataclass
class BoundReport:
    """Evaluated bounds, thresholds and verdicts for one (G, k) instance."""

    graph: str
    n: int
    k: int
    delta: int
    omega: int
    ekr: int
    theorem2: Optional[int]
    cycle_formula: Optional[int]
    lemma1_ok: bool
    lemma2_ok: Optional[bool]
    clique_sep_ok: bool
    tau_expression: List[Tuple[int, int]] = field(default_factory=list)
    eq_six_ok: Optional[bool] = None
    eq_bound_ok: Optional[bool] = None
    lemma1_final_ok: Optional[bool] = None
    max_intersecting: int = 0
    lemma1_max_k: int = 0
    lemma2_max_k: Optional[int] = None
    binding_threshold: str = ""
    constant: Optional[Fraction] = None
    in_theorem2_regime: bool = False


@dataclass
class SolveStats:
    nodes: int = 0
    wall_time: float = 0.0
    workers: int = 1
    conflicts: int = 0


@dataclass
class SolveResult:
    """Exact N(G, k) with one maximum family as witness."""

    graph: str
    n: int
    k: int
    value: int
    witness: Hypergraph
    stats: SolveStats = field(default_factory=SolveStats)
    method: str = "branch-and-bound"


@dataclass
class StructureReport:
    """Extremal-structure check of a solver witness against the maximum cliques of G."""

    value: int
    omega: int
    max_cliques: List[VertexSet]
    qualifying_cliques: List[VertexSet]
    theorem2_bound: Optional[int]
    within_theorem2_bound: Optional[bool]
    lemma1_ok: bool
    lemma2_ok: Optional[bool]
    clique_separation: bool
    witness_tau: Optional[int] = None
    full_degree_vertices: VertexSet = field(default_factory=VertexSet)
    full_degree_is_clique: bool = True

    @property
    def has_qualifying_clique(self) -> bool:
        return bool(self.qualifying_cliques)


@dataclass
class SweepRow:
    """One (n, k) cell of a cycle sweep."""

    n: int
    k: int
    formula: int
    construction: int
    exact: Optional[int]
    ratio: float
    k_over_n: float
    status: str
    conjecture_constant: float
    nodes: Optional[int] = None
    wall_time: Optional[float] = None
    error: Optional[str] = None

