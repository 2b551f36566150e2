"""
G-intersecting hypergraphs - exact tools for families of k-sets in which every two members
intersect or are joined by an edge of a host graph G.

Provides the bound evaluators, the extremal constructions, the cover-number machinery and an
exact solver for N(G, k) on desk-scale instances.
"""

__version__ = "0.1.0"

from .models import (
    CapacityError,
    GIntersectError,
    Graph,
    Hypergraph,
    InputError,
    InvariantError,
    VertexSet,
)
from .core import clique_number, cycle_graph, empty_graph, path_graph, complete_graph
from .family import build_clique_family, build_cycle_extremal, cover_number, is_g_intersecting
from .bounds import build_bound_report, cycle_formula, theorem2_bound
from .solver import naive_solve, solve_exact, sweep_cycle, verify_extremal_structure

__all__ = [
    "GIntersectError",
    "InputError",
    "CapacityError",
    "InvariantError",
    "VertexSet",
    "Graph",
    "Hypergraph",
    "clique_number",
    "cycle_graph",
    "empty_graph",
    "path_graph",
    "complete_graph",
    "build_clique_family",
    "build_cycle_extremal",
    "cover_number",
    "is_g_intersecting",
    "build_bound_report",
    "cycle_formula",
    "theorem2_bound",
    "solve_exact",
    "naive_solve",
    "verify_extremal_structure",
    "sweep_cycle",
]
