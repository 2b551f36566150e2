"""
Command-line interface for the G-intersecting hypergraph toolkit.
"""

from __future__ import annotations

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Callable, Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from . import __version__ as PACKAGE_VERSION
from .models import GIntersectError
from .runner import RunConfig, report_error, run
from .solver import DEFAULT_VERTEX_BUDGET, SWEEP_MODES


console = Console(stderr=True)
logger = logging.getLogger(__name__)


def _print_version(ctx, param, value):
    """Eager option callback to print version and exit."""
    if not value or ctx.resilient_parsing:
        return
    click.echo(f"g-intersect {PACKAGE_VERSION}")
    ctx.exit()


def _default_log_path() -> Path:
    """~/.g-intersect/g-intersect.log, or $G_INTERSECT_LOG."""
    env_path = os.environ.get("G_INTERSECT_LOG")
    if env_path:
        p = Path(env_path).expanduser()
        p.parent.mkdir(parents=True, exist_ok=True)
        return p
    base = Path.home() / ".g-intersect"
    base.mkdir(parents=True, exist_ok=True)
    return base / "g-intersect.log"


def setup_logging(
    verbose: bool = False, console_level: Optional[str] = None, log_file: Optional[Path] = None
) -> Path:
    """Rotating aggregate file log at DEBUG; console logging (stderr) only on request."""
    log_path = Path(log_file) if log_file else _default_log_path()
    log_path.parent.mkdir(parents=True, exist_ok=True)

    root = logging.getLogger()
    # Clear existing handlers to avoid duplication in tests / repeated invocations
    root.handlers.clear()
    root.setLevel(logging.DEBUG)

    file_handler = RotatingFileHandler(
        str(log_path), maxBytes=1_000_000, backupCount=3, encoding="utf-8"
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(
        logging.Formatter(
            fmt="%(asctime)s %(levelname)s [%(name)s] %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
    )
    root.addHandler(file_handler)

    if verbose or console_level:
        level_map = {
            "debug": logging.DEBUG,
            "info": logging.INFO,
            "warning": logging.WARNING,
            "error": logging.ERROR,
        }
        ch_level = level_map.get((console_level or "info").lower(), logging.INFO)
        console_handler = RichHandler(console=console, rich_tracebacks=True)
        console_handler.setLevel(ch_level)
        console_handler.setFormatter(logging.Formatter("%(message)s"))
        root.addHandler(console_handler)
    return log_path


def _execute(**fields: Any) -> None:
    """Build the RunConfig, run it, exit with its status."""
    try:
        config = RunConfig(**fields)
    except GIntersectError as e:
        logger.debug("Rejected command line", exc_info=True)
        report_error(e)
        sys.exit(e.exit_status)
    status = run(config)
    if status:
        sys.exit(status)


def graph_options(func: Callable) -> Callable:
    func = click.option(
        "--graph-file",
        type=click.Path(path_type=Path),
        help="Graph in edge-list format ('n m' header, then 'u v' lines)",
    )(func)
    return click.option(
        "--graph", "graph", help="Builtin graph: empty:n, cycle:n, path:n or complete:n"
    )(func)


def output_options(func: Callable) -> Callable:
    func = click.option(
        "--output",
        "-o",
        type=click.Path(dir_okay=False, path_type=Path),
        help="Write the result to this file instead of stdout",
    )(func)
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["text", "json"], case_sensitive=False),
        default="text",
        show_default=True,
        help="Output format",
    )(func)


def search_options(func: Callable) -> Callable:
    func = click.option(
        "--workers",
        type=int,
        default=1,
        show_default=True,
        envvar="G_INTERSECT_WORKERS",
        help="Worker processes for the exact search (env: G_INTERSECT_WORKERS)",
    )(func)
    return click.option(
        "--budget",
        type=int,
        default=DEFAULT_VERTEX_BUDGET,
        show_default=True,
        envvar="G_INTERSECT_BUDGET",
        help="Maximum number of k-subsets in the conflict graph (env: G_INTERSECT_BUDGET)",
    )(func)


@click.group()
@click.option(
    "--version",
    "-V",
    is_flag=True,
    callback=_print_version,
    expose_value=False,
    is_eager=True,
    help="Show version and exit.",
)
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose console logging (INFO)")
@click.option(
    "--log-level",
    type=click.Choice(["debug", "info", "warning", "error"], case_sensitive=False),
    default=None,
    help="Console log level. By default, console logging is disabled.",
)
@click.pass_context
def cli(ctx: click.Context, verbose: bool, log_level: Optional[str]) -> None:
    """G-intersecting hypergraphs - bounds, constructions and exact N(G, k)."""
    log_path = setup_logging(verbose, console_level=log_level)
    ctx.ensure_object(dict)
    ctx.obj["log_path"] = log_path
    logger.debug(f"CLI init: argv={sys.argv[1:]} log={log_path}")


@cli.command()
@graph_options
@click.option("--k", "k", type=int, required=True, help="Edge size k")
@click.option(
    "--constant",
    help="Rational constant C for the regime test k < C sqrt(n), e.g. 1/3",
)
@output_options
def bound(**fields: Any) -> None:
    """Evaluate every bound and threshold for (G, k)."""
    _execute(command="bound", **fields)


@cli.command()
@click.option(
    "--family",
    type=click.Choice(["clique", "cycle-extremal", "augmented"]),
    required=True,
    help="Which family to build",
)
@graph_options
@click.option("--n", "n", type=int, help="Cycle length for cycle-extremal")
@click.option("--k", "k", type=int, required=True, help="Edge size k")
@click.option(
    "--clique",
    help="Clique vertices, e.g. 0,1 (augmented defaults to a maximum clique)",
)
@output_options
def construct(**fields: Any) -> None:
    """Build a G-intersecting family in the hypergraph text format."""
    _execute(command="construct", **fields)


@cli.command()
@graph_options
@click.argument("hypergraph_file", type=click.Path(path_type=Path))
@output_options
def verify(**fields: Any) -> None:
    """Check that HYPERGRAPH_FILE is G-intersecting and compare its size with the bounds."""
    _execute(command="verify", **fields)


@cli.command()
@click.argument("hypergraph_file", type=click.Path(path_type=Path))
@output_options
def tau(**fields: Any) -> None:
    """Cover number of HYPERGRAPH_FILE."""
    _execute(command="tau", **fields)


@cli.command()
@graph_options
@click.option("--k", "k", type=int, required=True, help="Edge size k")
@click.option(
    "--check-oracle", is_flag=True, help="Also run the naive oracle (C(n,k) <= 150) and compare"
)
@search_options
@output_options
def solve(**fields: Any) -> None:
    """Compute N(G, k) exactly with a witness family and its structure report."""
    _execute(command="solve", **fields)


@cli.command()
@click.option("--n-range", required=True, help="n range, LO..HI")
@click.option("--k-range", required=True, help="k range, LO..HI")
@click.option(
    "--mode",
    type=click.Choice(list(SWEEP_MODES)),
    default="bounds-only",
    show_default=True,
    help="exact runs the solver per cell; bounds-only evaluates the formulas",
)
@search_options
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the rows to this file instead of stdout",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json", "csv"], case_sensitive=False),
    default="csv",
    show_default=True,
    help="Row format (json emits one object per line)",
)
def sweep(**fields: Any) -> None:
    """Stream N(C_n, k) rows over a grid of (n, k)."""
    _execute(command="sweep", **fields)


@cli.command()
def version() -> None:
    """Show version information."""
    click.echo(f"g-intersect {PACKAGE_VERSION}")


def main() -> None:
    """Main entry point for the CLI."""
    try:
        cli()
    except KeyboardInterrupt:
        console.print("\nOperation cancelled by user", style="bold yellow")
        logger.debug("Top-level cancellation (KeyboardInterrupt)", exc_info=True)
        sys.exit(130)
    except Exception as e:
        console.print(f"error[internal]: {e}", style="bold red")
        logger.debug("Unexpected error in main()", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
