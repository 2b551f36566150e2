"""
Text formats and serialization.

Graph text format::

    # comments start with '#'
    n m
    u v        (m lines, 0 <= u, v < n)

Hypergraph text format::

    n m k      (k = 0 when the hypergraph is not uniform)
    v1 v2 ...  (m lines, one edge each)

JSON payloads carry every integer count as a decimal string; CSV sweep output has a fixed header.
"""

from __future__ import annotations

import csv
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterator, List, Optional, TextIO, Tuple

from .core import builtin_graph, from_edge_list
from .models import MAX_GRAPH_VERTICES, Graph, Hypergraph, InputError, SweepRow, VertexSet


SWEEP_CSV_HEADER = ("n", "k", "formula", "construction", "exact", "ratio", "k_over_n", "status")


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(tokens: List[str], lineno: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got '{' '.join(tokens)}'") from None


# --- Graphs ---


def parse_graph_text(
    text: str, *, name: str = "", max_vertices: int = MAX_GRAPH_VERTICES
) -> Graph:
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise InputError("Graph text is empty: expected an 'n m' header")
    lineno, tokens = header
    if len(tokens) != 2:
        raise InputError(f"line {lineno}: header must be 'n m'")
    n, m = _ints(tokens, lineno)
    pairs = []
    for lineno, tokens in lines:
        if len(tokens) != 2:
            raise InputError(f"line {lineno}: edge must be 'u v'")
        u, v = _ints(tokens, lineno)
        pairs.append((u, v))
    if len(pairs) != m:
        raise InputError(f"Header announces {m} edges but {len(pairs)} were given")
    return from_edge_list(n, pairs, name=name, max_vertices=max_vertices)


def read_graph(path: Path, *, max_vertices: int = MAX_GRAPH_VERTICES) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read graph file {path}: {e}") from e
    return parse_graph_text(text, name=f"file:{Path(path).name}", max_vertices=max_vertices)


def format_graph_text(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_graph_spec(spec: str, *, max_vertices: int = MAX_GRAPH_VERTICES) -> Graph:
    """Builtin graph from ``kind:n``, e.g. ``cycle:8``."""
    kind, sep, size = spec.partition(":")
    if not sep or not size.strip().isdigit():
        raise InputError(f"Graph spec '{spec}' must look like kind:n (e.g. cycle:8)")
    return builtin_graph(kind.strip().lower(), int(size), max_vertices=max_vertices)


def parse_range(text: str) -> Tuple[int, int]:
    """``LO..HI`` or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        bounds = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise InputError(f"Range '{text}' must look like LO..HI") from None
    if bounds[0] > bounds[1]:
        raise InputError(f"Range '{text}' is empty")
    return bounds


def parse_vertex_list(text: str) -> VertexSet:
    """Comma separated vertex ids, e.g. ``0,1``."""
    try:
        return VertexSet.of(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise InputError(f"Vertex list '{text}' must be comma separated integers") from None


# --- Hypergraphs ---


def parse_hypergraph_text(text: str) -> Hypergraph:
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise InputError("Hypergraph text is empty: expected an 'n m k' header")
    lineno, tokens = header
    if len(tokens) != 3:
        raise InputError(f"line {lineno}: header must be 'n m k'")
    n, m, k = _ints(tokens, lineno)
    edges = []
    for lineno, tokens in lines:
        vertices = _ints(tokens, lineno)
        if len(set(vertices)) != len(vertices):
            raise InputError(f"line {lineno}: repeated vertex in edge")
        edges.append(VertexSet.of(vertices))
    if len(edges) != m:
        raise InputError(f"Header announces {m} edges but {len(edges)} were given")
    return Hypergraph(n, tuple(edges), k or None)


def read_hypergraph(path: Path) -> Hypergraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read hypergraph file {path}: {e}") from e
    return parse_hypergraph_text(text)


def format_hypergraph_text(h: Hypergraph) -> str:
    lines = [f"{h.ground_n} {len(h)} {h.uniform_k or 0}"]
    lines += [" ".join(str(v) for v in e) for e in h.edges]
    return "\n".join(lines) + "\n"


# --- JSON ---


def to_jsonable(value: Any) -> Any:
    """Plain JSON structure for results. Integers become decimal strings; vertex ids stay ints."""
    if value is None or isinstance(value, (bool, str, float)):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, VertexSet):
        return list(value)
    if isinstance(value, Hypergraph):
        return [list(e) for e in value.edges]
    if is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def dump_json(payload: Any, stream: TextIO, *, indent: Optional[int] = 2) -> None:
    json.dump(to_jsonable(payload), stream, indent=indent)
    stream.write("\n")


# --- CSV ---


class SweepCsvWriter:
    """Writes sweep rows under the fixed header, flushing each row."""

    def __init__(self, stream: TextIO) -> None:
        self._stream = stream
        self._writer = csv.writer(stream, lineterminator="\n")
        self._writer.writerow(SWEEP_CSV_HEADER)

    def write(self, row: SweepRow) -> None:
        self._writer.writerow(
            [
                row.n,
                row.k,
                row.formula,
                row.construction,
                "" if row.exact is None else row.exact,
                repr(row.ratio),
                repr(row.k_over_n),
                row.status,
            ]
        )
        self._stream.flush()
