"""
Tests for text formats, JSON serialization and the sweep CSV writer.
"""

import io
import json
from fractions import Fraction

import pytest

from g_intersect.core import cycle_graph
from g_intersect.family import build_cycle_extremal
from g_intersect.formats import (
    SWEEP_CSV_HEADER,
    SweepCsvWriter,
    dump_json,
    format_graph_text,
    format_hypergraph_text,
    parse_graph_spec,
    parse_graph_text,
    parse_hypergraph_text,
    parse_range,
    parse_vertex_list,
    read_graph,
    read_hypergraph,
    to_jsonable,
)
from g_intersect.models import Hypergraph, InputError, SweepRow, VertexSet


class TestGraphText:
    """Test the edge-list graph format."""

    def test_parse_with_comments(self):
        """Test comments and trailing comments are skipped."""
        text = "# a triangle\n3 3\n0 1\n1 2  # closing\n2 0\n"
        g = parse_graph_text(text, name="tri")
        assert g.n == 3
        assert g.edges() == [(0, 1), (0, 2), (1, 2)]
        assert g.label() == "tri"

    def test_format_then_parse(self):
        """Test a formatted cycle parses back to the same edges."""
        g = cycle_graph(7)
        assert parse_graph_text(format_graph_text(g)).edges() == g.edges()

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3\n",
            "3 1\n0 1\n1 2\n",
            "3 1\n0\n",
            "3 1\n0 x\n",
            "3 1\n0 3\n",
            "3 1\n1 1\n",
        ],
    )
    def test_rejects_malformed(self, text):
        """Test malformed graph text is a bad-input error."""
        with pytest.raises(InputError):
            parse_graph_text(text)

    def test_read_graph_names_file(self, tmp_path):
        """Test a file graph is labeled by its file name."""
        path = tmp_path / "square.txt"
        path.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
        g = read_graph(path)
        assert g.label() == "file:square.txt"
        assert g.num_edges == 4

    def test_missing_file(self, tmp_path):
        """Test an absent graph file."""
        with pytest.raises(InputError, match="Cannot read"):
            read_graph(tmp_path / "absent.txt")


class TestSpecs:
    """Test the small command-line value parsers."""

    def test_graph_spec(self):
        """Test a builtin graph spec."""
        g = parse_graph_spec("cycle:8")
        assert g.n == 8
        assert g.label() == "cycle:8"

    @pytest.mark.parametrize("spec", ["cycle", "cycle:", "cycle:x", "wheel:6"])
    def test_bad_graph_spec(self, spec):
        """Test malformed and unknown graph specs."""
        with pytest.raises(InputError):
            parse_graph_spec(spec)

    def test_range(self):
        """Test ranges and single values."""
        assert parse_range("8..10") == (8, 10)
        assert parse_range("7") == (7, 7)

    @pytest.mark.parametrize("text", ["10..8", "a..b", "..3"])
    def test_bad_range(self, text):
        """Test empty and unparseable ranges."""
        with pytest.raises(InputError):
            parse_range(text)

    def test_vertex_list(self):
        """Test vertex lists with spaces and a trailing comma."""
        assert parse_vertex_list("0,1") == VertexSet.of([0, 1])
        assert parse_vertex_list("3, 5,") == VertexSet.of([3, 5])
        with pytest.raises(InputError):
            parse_vertex_list("0,a")


class TestHypergraphText:
    """Test the hypergraph format."""

    def test_parse(self):
        """Test a uniform hypergraph."""
        h = parse_hypergraph_text("5 2 2\n0 1\n3 4\n")
        assert h.ground_n == 5
        assert h.uniform_k == 2
        assert h.edges == (VertexSet.of([0, 1]), VertexSet.of([3, 4]))

    def test_non_uniform_header(self):
        """Test k = 0 in the header allows mixed edge sizes."""
        h = parse_hypergraph_text("4 2 0\n0\n1 2 3\n")
        assert h.uniform_k is None
        assert len(h) == 2

    def test_construction_survives_the_format(self):
        """Test the cycle construction written and read back."""
        h = build_cycle_extremal(8, 3)
        text = format_hypergraph_text(h)
        assert text.splitlines()[0] == f"8 {len(h)} 3"
        assert parse_hypergraph_text(text).as_set() == h.as_set()

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "5 1\n0 1\n",
            "5 2 2\n0 1\n",
            "5 1 2\n0 0\n",
            "5 1 2\n0 1 2\n",
            "5 1 2\n0 5\n",
        ],
    )
    def test_rejects_malformed(self, text):
        """Test malformed hypergraph text is a bad-input error."""
        with pytest.raises(InputError):
            parse_hypergraph_text(text)

    def test_read(self, tmp_path):
        """Test reading a hypergraph file."""
        path = tmp_path / "h.txt"
        path.write_text("4 1 2\n0 3\n")
        assert read_hypergraph(path).edges == (VertexSet.of([0, 3]),)


class TestJson:
    """Test JSON conversion."""

    def test_integers_are_strings(self):
        """Test integers become decimal strings and other scalars pass through."""
        payload = {"value": 14, "big": 2**70, "ok": True, "ratio": 0.5, "none": None}
        assert to_jsonable(payload) == {
            "value": "14",
            "big": "1180591620717411303424",
            "ok": True,
            "ratio": 0.5,
            "none": None,
        }

    def test_structures(self):
        """Test vertex sets, hypergraphs, fractions and tuples."""
        h = Hypergraph(4, (VertexSet.of([0, 1]), VertexSet.of([1, 3])), 2)
        assert to_jsonable(VertexSet.of([2, 0])) == [0, 2]
        assert to_jsonable(h) == [[0, 1], [1, 3]]
        assert to_jsonable(Fraction(1, 3)) == "1/3"
        assert to_jsonable((1, 2)) == ["1", "2"]

    def test_dataclass(self):
        """Test a sweep row becomes a dict."""
        row = SweepRow(
            n=8,
            k=2,
            formula=14,
            construction=14,
            exact=None,
            ratio=0.5,
            k_over_n=0.25,
            status="bounds-only",
            conjecture_constant=0.1,
        )
        data = to_jsonable(row)
        assert data["n"] == "8"
        assert data["exact"] is None
        assert data["status"] == "bounds-only"

    def test_unknown_type(self):
        """Test unsupported values raise TypeError."""
        with pytest.raises(TypeError):
            to_jsonable(object())

    def test_dump(self):
        """Test dump_json writes one line with a newline."""
        stream = io.StringIO()
        dump_json({"value": 3}, stream, indent=None)
        assert stream.getvalue() == '{"value": "3"}\n'
        assert json.loads(stream.getvalue()) == {"value": "3"}


class TestSweepCsv:
    """Test the CSV writer."""

    def test_header_and_rows(self):
        """Test the header and an exact and a formula-only row."""
        stream = io.StringIO()
        writer = SweepCsvWriter(stream)
        rows = [
            SweepRow(8, 2, 14, 14, 14, 0.5, 0.25, "match", 0.1),
            SweepRow(100, 3, 9604, 9604, None, 0.06, 0.03, "bounds-only", 0.1),
        ]
        for row in rows:
            writer.write(row)
        lines = stream.getvalue().splitlines()
        assert lines[0] == ",".join(SWEEP_CSV_HEADER)
        assert lines[0] == "n,k,formula,construction,exact,ratio,k_over_n,status"
        assert lines[1] == "8,2,14,14,14,0.5,0.25,match"
        assert lines[2] == "100,3,9604,9604,,0.06,0.03,bounds-only"
