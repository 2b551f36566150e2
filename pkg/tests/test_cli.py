"""
Tests for the CLI interface.
"""

import io
import json
from fractions import Fraction
from unittest.mock import Mock, patch

import pytest
from click.testing import CliRunner

from g_intersect import __version__
from g_intersect.cli import cli
from g_intersect.models import CapacityError, InputError, InvariantError, VertexSet
from g_intersect.runner import RunConfig, report_error, run


def _error_text(result):
    """stderr when the runner captures it separately, else the combined output."""
    try:
        return result.stderr
    except ValueError:
        return result.output


class TestCLI:
    """Test CLI commands."""

    def setup_method(self):
        """Setup test environment."""
        self.runner = CliRunner()

    def test_cli_help(self):
        """Test CLI help command."""
        result = self.runner.invoke(cli, ["--help"])
        assert result.exit_code == 0
        assert "G-intersecting hypergraphs" in result.output
        for command in ("bound", "construct", "verify", "tau", "solve", "sweep"):
            assert command in result.output

    def test_version(self):
        """Test --version and the version command."""
        for args in (["--version"], ["version"]):
            result = self.runner.invoke(cli, args)
            assert result.exit_code == 0
            assert f"g-intersect {__version__}" in result.output

    def test_verbose_accepted(self):
        """Test the verbose flag before a subcommand."""
        result = self.runner.invoke(cli, ["--verbose", "--help"])
        assert result.exit_code == 0

    def test_solve_json(self):
        """Test the JSON payload of solve on the 8-cycle."""
        result = self.runner.invoke(
            cli, ["solve", "--graph", "cycle:8", "--k", "2", "--format", "json"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["value"] == "14"
        assert payload["n"] == "8"
        assert payload["method"] == "branch-and-bound"
        assert len(payload["witness"]) == 14
        assert all(len(edge) == 2 for edge in payload["witness"])
        assert payload["has_qualifying_clique"] is True
        assert payload["oracle_value"] is None

    def test_solve_text_with_oracle(self):
        """Test the text report with the naive cross-check."""
        result = self.runner.invoke(
            cli, ["solve", "--graph", "cycle:8", "--k", "2", "--check-oracle"]
        )
        assert result.exit_code == 0
        assert "N(cycle:8, 2)" in result.output
        assert "14" in result.output

    def test_solve_workers_from_env(self):
        """Test G_INTERSECT_WORKERS sets the worker count."""
        result = self.runner.invoke(
            cli,
            ["solve", "--graph", "path:6", "--k", "2", "--format", "json"],
            env={"G_INTERSECT_WORKERS": "2"},
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["stats"]["workers"] == "2"

    def test_bound_text(self):
        """Test the bound report table for the 100-cycle."""
        result = self.runner.invoke(cli, ["bound", "--graph", "cycle:100", "--k", "5"])
        assert result.exit_code == 0
        assert "Bounds for cycle:100, k=5" in result.output
        assert "lemma1_max_k" in result.output
        assert "binding_threshold" in result.output

    def test_bound_json(self):
        """Test the JSON bound report writes counts as strings."""
        result = self.runner.invoke(
            cli, ["bound", "--graph", "cycle:100", "--k", "5", "--format", "json"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["lemma1_max_k"] == "3"
        assert payload["lemma2_max_k"] == "4"
        assert payload["binding_threshold"] == "lemma1"

    def test_bound_constant(self):
        """Test --constant is echoed in the JSON report."""
        result = self.runner.invoke(
            cli,
            ["bound", "--graph", "cycle:100", "--k", "3", "--constant", "1/2", "--format", "json"],
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["constant"] == "1/2"

    def test_bad_constant(self):
        """Test an unparseable constant is a bad-input error."""
        result = self.runner.invoke(
            cli, ["bound", "--graph", "cycle:100", "--k", "3", "--constant", "x"]
        )
        assert result.exit_code == 2
        assert "error[bad-input]: Cannot parse constant 'x'" in _error_text(result)

    def test_construct_cycle_extremal(self):
        """Test the cycle construction on stdout."""
        result = self.runner.invoke(
            cli, ["construct", "--family", "cycle-extremal", "--n", "10", "--k", "3"]
        )
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "10 70 3"
        assert len([line for line in lines if not line.startswith("#")]) == 71
        assert "# size: 70" in lines
        assert "# G-intersecting: yes" in lines

    def test_construct_then_verify(self, tmp_path):
        """Test that a written construction verifies against its graph."""
        path = tmp_path / "family.txt"
        result = self.runner.invoke(
            cli,
            ["construct", "--family", "cycle-extremal", "--n", "10", "--k", "3", "-o", str(path)],
        )
        assert result.exit_code == 0
        assert f"Wrote {path}" in result.output
        assert "G-intersecting: yes" in result.output
        assert path.read_text().startswith("10 70 3\n")

        result = self.runner.invoke(cli, ["verify", "--graph", "cycle:10", str(path)])
        assert result.exit_code == 0
        assert "G-intersecting: yes" in result.output

        result = self.runner.invoke(
            cli, ["verify", "--graph", "empty:10", str(path), "--format", "json"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["g_intersecting"] is False
        assert payload["size"] == "70"

    def test_construct_clique_json(self):
        """Test the clique family as JSON."""
        result = self.runner.invoke(
            cli,
            ["construct", "--family", "clique", "--graph", "cycle:6", "--k", "2", "--clique", "0,1",
             "--format", "json"],
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["size"] == "9"
        assert payload["g_intersecting"] is True

    def test_construct_augmented_default_clique(self):
        """Test the augmented family picks a maximum clique by default."""
        result = self.runner.invoke(
            cli, ["construct", "--family", "augmented", "--graph", "cycle:8", "--k", "2"]
        )
        assert result.exit_code == 0
        assert "# G-intersecting: yes" in result.output

    def test_tau(self, tmp_path):
        """Test the cover number of a hypergraph file."""
        path = tmp_path / "triangle.txt"
        path.write_text("3 3 2\n0 1\n1 2\n0 2\n")
        result = self.runner.invoke(cli, ["tau", str(path)])
        assert result.exit_code == 0
        assert "tau: 2" in result.output
        result = self.runner.invoke(cli, ["tau", str(path), "--format", "json"])
        assert json.loads(result.output)["tau"] == "2"

    def test_sweep_csv(self):
        """Test the default CSV sweep output."""
        result = self.runner.invoke(
            cli, ["sweep", "--n-range", "8..9", "--k-range", "2..2", "--mode", "exact"]
        )
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "n,k,formula,construction,exact,ratio,k_over_n,status"
        assert lines[1].startswith("8,2,14,14,14,")
        assert lines[1].endswith(",match")
        assert lines[2].startswith("9,2,16,16,16,")

    def test_sweep_json_lines(self):
        """Test one JSON object per sweep row."""
        result = self.runner.invoke(
            cli, ["sweep", "--n-range", "100", "--k-range", "2..4", "--format", "json"]
        )
        assert result.exit_code == 0
        rows = [json.loads(line) for line in result.output.splitlines()]
        assert [row["k"] for row in rows] == ["2", "3", "4"]
        assert all(row["status"] == "bounds-only" and row["exact"] is None for row in rows)

    def test_sweep_text(self):
        """Test the text sweep table."""
        result = self.runner.invoke(
            cli, ["sweep", "--n-range", "50", "--k-range", "2", "--format", "text"]
        )
        assert result.exit_code == 0
        assert "n=50 k=2 formula=98" in result.output

    def test_sweep_output_file(self, tmp_path):
        """Test sweep rows written to --output."""
        path = tmp_path / "rows.csv"
        result = self.runner.invoke(
            cli, ["sweep", "--n-range", "60..61", "--k-range", "3", "-o", str(path)]
        )
        assert result.exit_code == 0
        assert len(path.read_text().splitlines()) == 3


class TestExitCodes:
    """Test that each error class maps to its exit status and error line."""

    def setup_method(self):
        """Setup test environment."""
        self.runner = CliRunner()

    def test_bad_input(self):
        """Test an unknown builtin graph."""
        result = self.runner.invoke(cli, ["solve", "--graph", "wheel:5", "--k", "2"])
        assert result.exit_code == 2
        assert "error[bad-input]: Unknown builtin graph 'wheel'" in _error_text(result)

    @pytest.mark.parametrize(
        "args,message",
        [
            (["sweep", "--n-range", "9..8", "--k-range", "2"], "Range '9..8' is empty"),
            (["sweep", "--n-range", "8..x", "--k-range", "2"], "must look like LO..HI"),
            (["sweep", "--n-range", "8", "--k-range", "a"], "must look like LO..HI"),
            (
                ["bound", "--graph", "cycle:100", "--k", "3", "--constant", "x"],
                "Cannot parse constant 'x'",
            ),
            (
                ["bound", "--graph", "cycle:100", "--k", "3", "--constant=-1/2"],
                "Constant must be positive",
            ),
            (
                ["construct", "--family", "clique", "--graph", "cycle:6", "--k", "2"]
                + ["--clique", "0,a"],
                "comma separated integers",
            ),
        ],
    )
    def test_malformed_values(self, args, message):
        """Test malformed option values report a bad-input line."""
        result = self.runner.invoke(cli, args)
        assert result.exit_code == 2
        text = _error_text(result)
        assert "error[bad-input]:" in text
        assert message in text

    def test_missing_files(self, tmp_path):
        """Test absent graph and hypergraph files report a bad-input line."""
        absent = tmp_path / "absent.txt"
        for args in (
            ["solve", "--graph-file", str(absent), "--k", "2"],
            ["tau", str(absent)],
            ["verify", "--graph", "cycle:6", str(absent)],
        ):
            result = self.runner.invoke(cli, args)
            assert result.exit_code == 2
            assert "error[bad-input]:" in _error_text(result)
            assert "does not exist" in _error_text(result)

    def test_sweep_below_cycle_minimum(self):
        """Test cycle sweeps reject n below 6."""
        result = self.runner.invoke(cli, ["sweep", "--n-range", "4..8", "--k-range", "2"])
        assert result.exit_code == 2
        assert "error[bad-input]:" in _error_text(result)

    def test_missing_graph(self):
        """Test solve without a graph source."""
        result = self.runner.invoke(cli, ["solve", "--k", "2"])
        assert result.exit_code == 2
        assert "needs a graph" in _error_text(result)

    def test_bad_worker_count(self):
        """Test zero workers is a bad-input error."""
        result = self.runner.invoke(
            cli, ["solve", "--graph", "cycle:8", "--k", "2", "--workers", "0"]
        )
        assert result.exit_code == 2

    def test_capacity(self):
        """Test an oversized conflict graph exits 3."""
        result = self.runner.invoke(
            cli, ["solve", "--graph", "cycle:20", "--k", "10", "--budget", "1000"]
        )
        assert result.exit_code == 3
        assert "error[capacity-exceeded]:" in _error_text(result)

    def test_budget_from_env(self):
        """Test G_INTERSECT_BUDGET sets the budget."""
        result = self.runner.invoke(
            cli, ["solve", "--graph", "cycle:20", "--k", "10"], env={"G_INTERSECT_BUDGET": "1000"}
        )
        assert result.exit_code == 3

    @patch("g_intersect.runner.naive_solve")
    def test_oracle_disagreement(self, mock_naive):
        """Test an oracle mismatch exits 4."""
        mock_naive.return_value = Mock(value=0)
        result = self.runner.invoke(
            cli, ["solve", "--graph", "cycle:8", "--k", "2", "--check-oracle"]
        )
        assert result.exit_code == 4
        assert "error[invariant-failure]:" in _error_text(result)


class TestRunner:
    """Test RunConfig validation and run() directly."""

    def test_config_rejects_csv_outside_sweep(self):
        """Test CSV is only accepted for sweep."""
        with pytest.raises(InputError, match="CSV"):
            RunConfig(command="solve", graph="cycle:8", k=2, fmt="csv")

    def test_config_rejects_two_graph_sources(self, tmp_path):
        """Test --graph and --graph-file together are rejected."""
        graph_file = tmp_path / "g.txt"
        graph_file.write_text("3 0\n")
        with pytest.raises(InputError, match="either"):
            RunConfig(command="bound", graph="cycle:8", graph_file=graph_file, k=2)

    def test_config_construct_needs_clique(self):
        """Test the clique family requires --clique."""
        with pytest.raises(InputError):
            RunConfig(command="construct", family="clique", graph="cycle:8", k=2)

    def test_config_parses_raw_strings(self):
        """Test RunConfig converts command-line strings to ranges, sets and fractions."""
        config = RunConfig(command="sweep", n_range="8..9", k_range="2")
        assert config.n_range == (8, 9)
        assert config.k_range == (2, 2)
        config = RunConfig(command="bound", graph="cycle:100", k=3, constant="1/2")
        assert config.constant == Fraction(1, 2)
        config = RunConfig(
            command="construct", family="clique", graph="cycle:6", k=2, clique="0,1"
        )
        assert config.clique == VertexSet.of([0, 1])

    def test_run_writes_to_stream(self):
        """Test run() writes to the given stream and returns 0."""
        stream = io.StringIO()
        status = run(RunConfig(command="solve", graph="empty:6", k=2, fmt="json"), stream)
        assert status == 0
        assert json.loads(stream.getvalue())["value"] == "5"

    def test_run_returns_capacity_status(self):
        """Test run() maps a capacity error to status 3."""
        config = RunConfig(command="solve", graph="cycle:20", k=10, budget=1000)
        assert run(config, io.StringIO()) == 3

    def test_report_error_line(self, capsys):
        """Test the error line format for each code."""
        report_error(CapacityError("too many", required=10, limit=5))
        report_error(InvariantError("broken"))
        err = capsys.readouterr().err
        assert err == "error[capacity-exceeded]: too many\nerror[invariant-failure]: broken\n"
