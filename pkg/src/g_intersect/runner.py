"""
Command execution behind the CLI: a validated RunConfig in, an exit status and an emitted
artifact out.
"""

from __future__ import annotations

import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterator, Optional, TextIO, Tuple, Union

from rich.console import Console
from rich.table import Table

from .bounds import build_bound_report, parse_constant, theorem2_bound
from .core import clique_number, cycle_graph, max_degree
from .family import (
    augment_clique_family,
    build_clique_family,
    build_cycle_extremal,
    cover_number,
    is_g_intersecting,
    neighborhood_hypergraph,
)
from .formats import (
    SweepCsvWriter,
    dump_json,
    format_hypergraph_text,
    parse_graph_spec,
    parse_range,
    parse_vertex_list,
    read_graph,
    read_hypergraph,
)
from .models import (
    GIntersectError,
    Graph,
    Hypergraph,
    InputError,
    InvariantError,
    MAX_GRAPH_VERTICES,
    VertexSet,
)
from .solver import (
    DEFAULT_VERTEX_BUDGET,
    SWEEP_MODES,
    naive_solve,
    solve_exact,
    sweep_cycle,
    verify_extremal_structure,
)


logger = logging.getLogger(__name__)

COMMANDS = ("bound", "construct", "verify", "tau", "solve", "sweep")
FORMATS = ("text", "json", "csv")
FAMILIES = ("clique", "cycle-extremal", "augmented")
TABLE_WIDTH = 120


@dataclass
class RunConfig:
    """One CLI invocation, validated on construction."""

    command: str
    graph: Optional[str] = None
    graph_file: Optional[Path] = None
    k: Optional[int] = None
    n: Optional[int] = None
    n_range: Optional[Union[str, Tuple[int, int]]] = None
    k_range: Optional[Union[str, Tuple[int, int]]] = None
    mode: str = "bounds-only"
    family: Optional[str] = None
    clique: Optional[Union[str, VertexSet]] = None
    hypergraph_file: Optional[Path] = None
    fmt: str = "text"
    output: Optional[Path] = None
    workers: int = 1
    budget: int = DEFAULT_VERTEX_BUDGET
    constant: Optional[Union[str, Fraction]] = None
    check_oracle: bool = False

    def __post_init__(self) -> None:
        self._parse_values()
        if self.command not in COMMANDS:
            raise InputError(f"Unknown command '{self.command}'")
        if self.fmt not in FORMATS:
            raise InputError(f"Unknown output format '{self.fmt}'")
        if self.fmt == "csv" and self.command != "sweep":
            raise InputError("CSV output is only available for sweep")
        if self.workers < 1:
            raise InputError(f"Worker count must be at least 1, got {self.workers}")
        if self.budget < 1:
            raise InputError(f"Vertex budget must be positive, got {self.budget}")
        if self.graph is not None and self.graph_file is not None:
            raise InputError("Give either --graph or --graph-file, not both")
        if self.needs_graph and self.graph is None and self.graph_file is None:
            raise InputError(f"'{self.command}' needs a graph (--graph or --graph-file)")
        if self.command in ("bound", "solve", "construct") and self.k is None:
            raise InputError(f"'{self.command}' needs --k")
        if self.k is not None and self.k < 1:
            raise InputError(f"k must be at least 1, got {self.k}")
        if self.command in ("verify", "tau") and self.hypergraph_file is None:
            raise InputError(f"'{self.command}' needs a hypergraph file")
        if self.command == "construct":
            self._check_construct()
        if self.command == "sweep":
            self._check_sweep()

    def _parse_values(self) -> None:
        """Convert raw command-line strings; malformed values raise InputError."""
        if isinstance(self.n_range, str):
            self.n_range = parse_range(self.n_range)
        if isinstance(self.k_range, str):
            self.k_range = parse_range(self.k_range)
        if isinstance(self.clique, str):
            self.clique = parse_vertex_list(self.clique)
        if isinstance(self.constant, str):
            self.constant = parse_constant(self.constant)
        files = (("graph file", self.graph_file), ("hypergraph file", self.hypergraph_file))
        for label, path in files:
            if path is not None and not Path(path).is_file():
                raise InputError(f"The {label} {path} does not exist or is not a file")

    def _check_construct(self) -> None:
        if self.family not in FAMILIES:
            raise InputError(f"--family must be one of {', '.join(FAMILIES)}")
        if self.family == "cycle-extremal" and self.n is None:
            raise InputError("cycle-extremal needs --n")
        if self.family == "clique" and not self.clique:
            raise InputError("The clique family needs --clique")

    def _check_sweep(self) -> None:
        if self.n_range is None or self.k_range is None:
            raise InputError("sweep needs --n-range and --k-range")
        for lo, hi in (self.n_range, self.k_range):
            if lo > hi:
                raise InputError(f"Empty range {lo}..{hi}")
        if self.mode not in SWEEP_MODES:
            raise InputError(f"--mode must be one of {', '.join(SWEEP_MODES)}")

    @property
    def needs_graph(self) -> bool:
        if self.command in ("bound", "solve", "verify"):
            return True
        return self.command == "construct" and self.family in ("clique", "augmented")

    def load_graph(self) -> Graph:
        if self.graph_file is not None:
            return read_graph(self.graph_file)
        return parse_graph_spec(self.graph or "")


def report_error(error: GIntersectError) -> None:
    """One machine-readable line on stderr."""
    sys.stderr.write(f"error[{error.code}]: {error}\n")
    sys.stderr.flush()


@contextmanager
def _open_output(config: RunConfig, stream: Optional[TextIO]) -> Iterator[TextIO]:
    if config.output is None:
        yield stream or sys.stdout
        return
    try:
        handle = open(config.output, "w", encoding="utf-8", newline="")
    except OSError as e:
        raise InputError(f"Cannot write {config.output}: {e}") from e
    with handle:
        yield handle


def _console(out: TextIO) -> Console:
    return Console(file=out, width=TABLE_WIDTH, highlight=False, soft_wrap=True)


def _key_value_table(title: str, rows: Dict[str, object]) -> Table:
    table = Table(title=title, show_header=True, header_style="bold")
    table.add_column("Field", style="cyan")
    table.add_column("Value")
    for key, value in rows.items():
        table.add_row(key, "-" if value is None else str(value))
    return table


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


# --- Commands ---


def _run_bound(config: RunConfig, out: TextIO) -> None:
    report = build_bound_report(config.load_graph(), config.k, config.constant)
    if config.fmt == "json":
        dump_json(report, out)
        return
    rows = {
        "graph": report.graph,
        "n": report.n,
        "k": report.k,
        "delta": report.delta,
        "omega": report.omega,
        "ekr_bound": report.ekr,
        "max_intersecting": report.max_intersecting,
        "theorem2_bound": report.theorem2,
        "cycle_formula": report.cycle_formula,
        "lemma1_threshold": report.lemma1_ok,
        "lemma2_threshold": report.lemma2_ok,
        "lemma1_max_k": report.lemma1_max_k,
        "lemma2_max_k": report.lemma2_max_k,
        "binding_threshold": report.binding_threshold,
        "clique_separation": report.clique_sep_ok,
        "eq_six": report.eq_six_ok,
        "eq_bound": report.eq_bound_ok,
        "lemma1_final": report.lemma1_final_ok,
        "constant": report.constant,
        "in_theorem2_regime": report.in_theorem2_regime,
    }
    console = _console(out)
    console.print(_key_value_table(f"Bounds for {report.graph}, k={report.k}", rows))
    if report.tau_expression:
        tau_table = Table(title="tau (delta+1)^tau k^(tau-1) C(n-tau, k-tau)")
        tau_table.add_column("tau", justify="right")
        tau_table.add_column("value", justify="right")
        for tau, value in report.tau_expression:
            tau_table.add_row(str(tau), str(value))
        console.print(tau_table)


def _construct_family(config: RunConfig) -> Tuple[Graph, Hypergraph]:
    k = config.k
    if config.family == "cycle-extremal":
        n = config.n
        family = build_cycle_extremal(n, k)
        return cycle_graph(n, max_vertices=max(n, MAX_GRAPH_VERTICES)), family
    g = config.load_graph()
    if config.family == "clique":
        return g, build_clique_family(g, config.clique, k)
    clique = config.clique
    if clique is None:
        _, cliques = clique_number(g)
        clique = cliques[0]
    return g, augment_clique_family(g, clique, k)


def _run_construct(config: RunConfig, out: TextIO) -> None:
    g, family = _construct_family(config)
    valid = is_g_intersecting(g, family)
    logger.info(f"Constructed {config.family} family on {g.label()}: {len(family)} edges")
    if config.fmt == "json":
        dump_json(
            {
                "family": config.family,
                "graph": g.label(),
                "n": g.n,
                "k": config.k,
                "size": len(family),
                "g_intersecting": valid,
                "edges": family,
            },
            out,
        )
        return
    summary = f"size: {len(family)}\nG-intersecting: {_yes_no(valid)}\n"
    out.write(format_hypergraph_text(family))
    if config.output is None:
        out.write("".join(f"# {line}\n" for line in summary.splitlines()))
    else:
        sys.stdout.write(f"Wrote {config.output}\n{summary}")


def _run_verify(config: RunConfig, out: TextIO) -> None:
    g = config.load_graph()
    h = read_hypergraph(config.hypergraph_file)
    if h.ground_n != g.n:
        raise InputError(f"Hypergraph is on {h.ground_n} vertices but the graph has {g.n}")
    valid = is_g_intersecting(g, h)
    tau = cover_number(neighborhood_hypergraph(g, h))[0] if h.edges else None
    k = h.uniform_k
    bound = None
    if k is not None and k >= 2:
        omega, _ = clique_number(g)
        bound = theorem2_bound(g.n, k, max_degree(g), omega)
    payload = {
        "graph": g.label(),
        "size": len(h),
        "k": k,
        "g_intersecting": valid,
        "tau": tau,
        "theorem2_bound": bound,
        "within_theorem2_bound": None if bound is None else len(h) <= bound,
    }
    if config.fmt == "json":
        dump_json(payload, out)
        return
    out.write(f"G-intersecting: {_yes_no(valid)}\n")
    _console(out).print(_key_value_table(f"Verification on {g.label()}", payload))


def _run_tau(config: RunConfig, out: TextIO) -> None:
    h = read_hypergraph(config.hypergraph_file)
    tau, cover = cover_number(h)
    if config.fmt == "json":
        dump_json({"edges": len(h), "tau": tau, "cover": cover}, out)
        return
    out.write(f"tau: {tau}\ncover: {' '.join(str(v) for v in cover)}\n")


def _run_solve(config: RunConfig, out: TextIO) -> None:
    g = config.load_graph()
    result = solve_exact(g, config.k, budget=config.budget, workers=config.workers)
    structure = verify_extremal_structure(g, config.k, result)
    oracle = None
    if config.check_oracle:
        oracle = naive_solve(g, config.k).value
        if oracle != result.value:
            raise InvariantError(
                f"Exact search found {result.value} but the naive oracle found {oracle}"
            )
    if config.fmt == "json":
        dump_json(
            {
                "graph": result.graph,
                "n": result.n,
                "k": result.k,
                "value": result.value,
                "method": result.method,
                "witness": result.witness,
                "stats": result.stats,
                "structure": structure,
                "has_qualifying_clique": structure.has_qualifying_clique,
                "oracle_value": oracle,
            },
            out,
        )
        return
    rows = {
        "value": result.value,
        "nodes": result.stats.nodes,
        "wall_time": f"{result.stats.wall_time:.3f}s",
        "workers": result.stats.workers,
        "conflict_edges": result.stats.conflicts,
        "omega": structure.omega,
        "maximum_cliques": len(structure.max_cliques),
        "qualifying_cliques": ", ".join(repr(c) for c in structure.qualifying_cliques) or "none",
        "theorem2_bound": structure.theorem2_bound,
        "within_theorem2_bound": structure.within_theorem2_bound,
        "lemma1_threshold": structure.lemma1_ok,
        "lemma2_threshold": structure.lemma2_ok,
        "witness_tau": structure.witness_tau,
        "full_degree_vertices": structure.full_degree_vertices,
        "oracle_agrees": None if oracle is None else oracle == result.value,
    }
    _console(out).print(_key_value_table(f"N({result.graph}, {result.k})", rows))


def _run_sweep(config: RunConfig, out: TextIO) -> None:
    (n_lo, n_hi), (k_lo, k_hi) = config.n_range, config.k_range
    rows = sweep_cycle(
        n_lo, n_hi, k_lo, k_hi, config.mode, budget=config.budget, workers=config.workers
    )
    if config.fmt == "csv":
        writer = SweepCsvWriter(out)
        for row in rows:
            writer.write(row)
        return
    if config.fmt == "json":
        for row in rows:
            dump_json(row, out, indent=None)
            out.flush()
        return
    for row in rows:
        exact = "-" if row.exact is None else row.exact
        out.write(
            f"n={row.n} k={row.k} formula={row.formula} construction={row.construction} "
            f"exact={exact} ratio={row.ratio:.6f} status={row.status}\n"
        )
        out.flush()


_HANDLERS: Dict[str, Callable[[RunConfig, TextIO], None]] = {
    "bound": _run_bound,
    "construct": _run_construct,
    "verify": _run_verify,
    "tau": _run_tau,
    "solve": _run_solve,
    "sweep": _run_sweep,
}


def run(config: RunConfig, stream: Optional[TextIO] = None) -> int:
    """Execute ``config``; returns 0 on success or the failing error's exit status.

    A negative verification verdict is a result, not an error.
    """
    logger.debug(f"Running {config}")
    try:
        with _open_output(config, stream) as out:
            _HANDLERS[config.command](config, out)
    except GIntersectError as e:
        logger.debug(f"{config.command} failed with {e.code}", exc_info=True)
        report_error(e)
        return e.exit_status
    return 0
