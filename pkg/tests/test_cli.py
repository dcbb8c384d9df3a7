"""Tests for clsmooth.cli module."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

from typer.testing import CliRunner

from clsmooth import __version__
from clsmooth.cli import app
from clsmooth.smoothing.smoothed import load_smoothed

if TYPE_CHECKING:
    from pathlib import Path

runner = CliRunner()


def _csv_lines(path: Path) -> list[str]:
    return path.read_text(encoding="utf-8").splitlines()


class TestVersion:
    def test_prints_version(self):
        result = runner.invoke(app, ["version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_missing_config_is_usage_error(self, tmp_path: Path):
        result = runner.invoke(app, ["--config", str(tmp_path / "nope.toml"), "version"])
        assert result.exit_code == 2
        assert "Configuration error" in result.output


class TestSmooth:
    def test_writes_smoothed_function(
        self, tmp_path: Path, interval_domain: Path, half_window: Path
    ):
        output = tmp_path / "smoothed.json"
        grid = tmp_path / "grid.csv"
        result = runner.invoke(
            app,
            [
                "smooth",
                "--fn", "sin(x1)",
                "--domain", str(interval_domain),
                "--window", str(half_window),
                "-n", "8",
                "-o", str(output),
                "--grid-csv", str(grid),
                "--grid-points", "5",
            ],
        )  # fmt: skip
        assert result.exit_code == 0, result.output
        smoothed = load_smoothed(output)
        assert smoothed.dimension == 1
        assert len(smoothed) > 0
        lines = _csv_lines(grid)
        assert lines[0] == "x,value1"
        assert len(lines) == 6

    def test_without_window_uses_domain_closure(self, tmp_path: Path, interval_domain: Path):
        output = tmp_path / "smoothed.json"
        result = runner.invoke(
            app, ["smooth", "--fn", "x1", "--domain", str(interval_domain), "-o", str(output)]
        )
        assert result.exit_code == 0, result.output
        assert output.exists()

    def test_bad_expression_is_usage_error(self, tmp_path: Path):
        result = runner.invoke(app, ["smooth", "--fn", "sin(", "-o", str(tmp_path / "s.json")])
        assert result.exit_code == 2
        assert "Invalid input" in result.output

    def test_stage_builds_exhaustion_stage(self, tmp_path: Path, interval_domain: Path):
        output = tmp_path / "stage.json"
        result = runner.invoke(
            app,
            ["smooth", "--fn", "sin(x1)", "--domain", str(interval_domain), "--stage", "2",
             "-o", str(output)],
        )  # fmt: skip
        assert result.exit_code == 0, result.output
        assert "S_2" in result.output
        assert len(load_smoothed(output)) > 0

    def test_stage_beyond_configured_depth(self, tmp_path: Path, interval_domain: Path):
        config = tmp_path / "shallow.toml"
        config.write_text("[exhaustion]\nmax_depth = 1\n", encoding="utf-8")
        result = runner.invoke(
            app,
            ["--config", str(config), "smooth", "--fn", "x1", "--domain", str(interval_domain),
             "--stage", "2", "-o", str(tmp_path / "s.json")],
        )  # fmt: skip
        assert result.exit_code == 1
        assert "depth must be in [1, 1]" in result.output

    def test_stage_needs_domain(self, tmp_path: Path):
        result = runner.invoke(
            app, ["smooth", "--fn", "x1", "--stage", "1", "-o", str(tmp_path / "s.json")]
        )
        assert result.exit_code == 1
        assert "--domain" in result.output

    def test_order_above_configured_maximum(self, tmp_path: Path, interval_domain: Path):
        config = tmp_path / "low.toml"
        config.write_text("[jets]\nmax_order = 2\n", encoding="utf-8")
        result = runner.invoke(
            app,
            ["--config", str(config), "smooth", "--fn", "x1", "--domain", str(interval_domain),
             "--order", "3", "-o", str(tmp_path / "s.json")],
        )  # fmt: skip
        assert result.exit_code == 2
        assert "jets.max_order" in result.output

    def test_overflow_is_usage_error(self, tmp_path: Path, interval_domain: Path):
        result = runner.invoke(
            app,
            ["smooth", "--fn", "exp(1000*x1)", "--domain", str(interval_domain),
             "-n", "8", "-o", str(tmp_path / "s.json")],
        )  # fmt: skip
        assert result.exit_code == 2
        assert "overflow" in result.output


class TestExtend:
    def test_halfspace(self, tmp_path: Path):
        output = tmp_path / "extended.csv"
        result = runner.invoke(
            app,
            ["extend", "--fn", "sin(x1)", "--source", "halfspace", "-o", str(output),
             "--grid-points", "5"],
        )  # fmt: skip
        assert result.exit_code == 0, result.output
        lines = _csv_lines(output)
        assert lines[0] == "x,value1"
        assert lines[1].startswith("-0.5,")
        assert len(lines) == 6

    def test_corner_axis_count_in_source(self, tmp_path: Path):
        output = tmp_path / "corner.csv"
        result = runner.invoke(
            app,
            ["extend", "--fn", "x1*x2", "--source", "corner:2", "-o", str(output),
             "--grid-points", "3"],
        )  # fmt: skip
        assert result.exit_code == 0, result.output
        assert "x1=0" in result.output
        assert "x2=0" in result.output
        assert len(_csv_lines(output)) == 10

    def test_malformed_corner_source(self, tmp_path: Path):
        for source in ("corner:x", "cube:2"):
            result = runner.invoke(
                app, ["extend", "--fn", "x1", "--source", source, "-o", str(tmp_path / "e.csv")]
            )
            assert result.exit_code == 2
            assert "Unknown source" in result.output

    def test_unknown_source(self, tmp_path: Path):
        result = runner.invoke(
            app, ["extend", "--fn", "x1", "--source", "sphere", "-o", str(tmp_path / "e.csv")]
        )
        assert result.exit_code == 2
        assert "Unknown source" in result.output


class TestDugundji:
    def test_value_table(self, tmp_path: Path, closed_set_file: Path):
        output = tmp_path / "values.csv"
        continuity = tmp_path / "path.csv"
        result = runner.invoke(
            app,
            ["dugundji", "--fn", "sin(3*x1)", "--set", str(closed_set_file), "-o", str(output),
             "--grid", "9", "--continuity", str(continuity)],
        )  # fmt: skip
        assert result.exit_code == 0, result.output
        lines = _csv_lines(output)
        assert lines[0] == "query,d_Y,shell,value1,hull_ok"
        assert len(lines) == 10
        assert _csv_lines(continuity)[0] == "step,d_Y,error"

    def test_missing_set_file(self, tmp_path: Path):
        result = runner.invoke(
            app,
            ["dugundji", "--fn", "x1", "--set", str(tmp_path / "nope.json"),
             "-o", str(tmp_path / "v.csv")],
        )  # fmt: skip
        assert result.exit_code == 2


class TestReport:
    def test_convergence_keeps_scale_order(self, tmp_path: Path):
        output = tmp_path / "conv.csv"
        result = runner.invoke(
            app,
            ["report", "--kind", "convergence", "--fn", "sin(x1)", "--scales", "8,4",
             "-o", str(output)],
        )  # fmt: skip
        assert result.exit_code == 0, result.output
        lines = _csv_lines(output)
        assert lines[0] == "n,err_C0,err_C1"
        assert [line.split(",")[0] for line in lines[1:]] == ["8", "4"]

    def test_convergence_takes_one_function(self, tmp_path: Path):
        result = runner.invoke(
            app,
            ["report", "--kind", "convergence", "--fn", "x1", "--fn", "x1^2", "--scales", "4",
             "-o", str(tmp_path / "c.csv")],
        )  # fmt: skip
        assert result.exit_code == 1

    def test_unknown_kind(self, tmp_path: Path):
        result = runner.invoke(app, ["report", "--kind", "speed", "-o", str(tmp_path / "r.csv")])
        assert result.exit_code == 2

    def test_invalid_scales(self, tmp_path: Path):
        result = runner.invoke(
            app,
            ["report", "--kind", "convergence", "--fn", "x1", "--scales", "four",
             "-o", str(tmp_path / "c.csv")],
        )  # fmt: skip
        assert result.exit_code == 1
        assert "invalid scale list" in result.output


class TestSelftest:
    def test_list(self):
        result = runner.invoke(app, ["selftest", "--list"])
        assert result.exit_code == 0
        assert "vandermonde" in result.output
        assert "dugundji" in result.output

    def test_single_suite_with_summary(self, tmp_path: Path):
        summary = tmp_path / "summary.json"
        result = runner.invoke(
            app, ["selftest", "--suite", "vandermonde", "--json", str(summary)]
        )
        assert result.exit_code == 0, result.output
        assert "All 1 suites passed" in result.output
        data = json.loads(summary.read_text(encoding="utf-8"))
        assert data == [{"suite": "vandermonde", "pass": True, "max_violation": 0.0}]

    def test_unknown_suite(self):
        result = runner.invoke(app, ["selftest", "--suite", "nope"])
        assert result.exit_code == 2
        assert "Unknown suite" in result.output
