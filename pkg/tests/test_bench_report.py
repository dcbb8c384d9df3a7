"""Tests for clsmooth.bench.report: CSV builders, JSON summary and console output."""

from __future__ import annotations

import json
import math
from io import StringIO
from typing import TYPE_CHECKING

import pytest
from rich.console import Console

from clsmooth.bench.report import (
    bound_csv,
    convergence_csv,
    growth_csv,
    load_summary,
    print_bound,
    print_convergence,
    print_rates,
    print_suites,
    print_uniform,
    rate_csv,
    save_summary,
    suite_summary,
    uniform_csv,
)
from clsmooth.bench.types import (
    BoundCertificate,
    BoundRow,
    ConvergenceRow,
    ConvergenceTable,
    GrowthRow,
    RateFit,
    SuiteResult,
    UniformFamilyReport,
    UniformRow,
)
from clsmooth.exceptions import ReportError

if TYPE_CHECKING:
    from pathlib import Path


def _table() -> ConvergenceTable:
    rows = (
        ConvergenceRow(8, (0.5, 1.0), 0.25),
        ConvergenceRow(4, (0.25, 0.75), 0.5),
    )
    return ConvergenceTable("sine", "stilde", 1, ((-1.0, 1.0),), rows, non_monotone=(1,))


def _certificate() -> BoundCertificate:
    return BoundCertificate(
        dimension=1,
        order=1,
        scale=4,
        h0=1.5,
        h0_seed=3,
        h0_grid="step=0.001 on [0,1)",
        h0_definition="xi",
        constant=25.0,
        rows=(
            BoundRow("sine", 1.0, 1.0, 1.0, 0.1, 0.1),
            BoundRow("wild", 30.0, 1.0, 30.0, 0.1, 0.1),
        ),
        growth=(GrowthRow(0, 1.0, 4.0, 5.0),),
    )


def _results() -> list[SuiteResult]:
    return [
        SuiteResult("vandermonde", True, 0.0, 6),
        SuiteResult("support", False, 0.5, 3, ("cube (2,) escapes",)),
        SuiteResult("dugundji", False, math.inf, 0, ("GeometryError: boom",)),
    ]


def _console() -> tuple[Console, StringIO]:
    buffer = StringIO()
    return Console(file=buffer, width=160), buffer


class TestCsv:
    def test_convergence_keeps_scale_order(self):
        text = convergence_csv(_table()).render()
        lines = text.splitlines()
        assert lines[0] == "n,err_C0,err_C1"
        assert [line.split(",")[0] for line in lines[1:]] == ["8", "4"]

    def test_bound_marks_failures(self):
        table = bound_csv(_certificate())
        assert table.header[-1] == "pass"
        assert [row[-1] for row in table.rows] == [True, False]
        assert table.rows[0][4] == 25.0

    def test_growth(self):
        assert growth_csv(_certificate()).render() == "order,h0,factor,constant\n0,1,4,5\n"

    def test_rates(self):
        fit = RateFit("sine", -1.0, 0.5, 3, -0.8)
        assert rate_csv([fit]).rows == [("sine", -1.0, 0.5, 3, -0.8, True)]

    def test_uniform(self):
        report = UniformFamilyReport(1, (1.0, 2.0), (UniformRow(4, 0.1, 2.0),))
        expected = "n,sup_error,worst_parameter\n4,0.10000000000000001,2\n"
        assert uniform_csv(report).render() == expected


class TestSummary:
    def test_shape(self):
        summary = suite_summary(_results())
        assert summary[0] == {"suite": "vandermonde", "pass": True, "max_violation": 0.0}
        assert summary[2]["max_violation"] is None

    def test_save_and_load(self, tmp_path: Path):
        path = tmp_path / "out" / "summary.json"
        save_summary(_results(), path)
        assert json.loads(path.read_text(encoding="utf-8"))[1]["pass"] is False
        loaded = load_summary(path)
        assert [r.suite for r in loaded] == ["vandermonde", "support", "dugundji"]
        assert loaded[2].max_violation == math.inf

    def test_load_missing(self, tmp_path: Path):
        with pytest.raises(ReportError, match="not found"):
            load_summary(tmp_path / "missing.json")

    def test_load_invalid_json(self, tmp_path: Path):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ReportError, match="Failed to load"):
            load_summary(path)

    def test_load_wrong_shape(self, tmp_path: Path):
        path = tmp_path / "bad.json"
        path.write_text('[{"suite": "x"}]', encoding="utf-8")
        with pytest.raises(ReportError, match="Invalid suite summary"):
            load_summary(path)


class TestConsole:
    def test_convergence(self):
        console, buffer = _console()
        print_convergence(_table(), console)
        assert "sine: stilde" in buffer.getvalue()

    def test_bound(self):
        console, buffer = _console()
        print_bound(_certificate(), console)
        output = buffer.getvalue()
        assert "C = 25" in output
        assert "PASS" in output
        assert "FAIL" in output

    def test_rates_and_uniform(self):
        console, buffer = _console()
        print_rates([RateFit("sine", -1.0, 0.5, 3, -0.8)], console)
        print_uniform(UniformFamilyReport(1, (1.0, 2.0), (UniformRow(4, 0.1, 2.0),)), console)
        output = buffer.getvalue()
        assert "-1.000" in output
        assert "1.000e-01" in output

    def test_suites(self):
        console, buffer = _console()
        print_suites(_results(), console)
        output = buffer.getvalue()
        assert "2 of 3 suite(s) failed" in output
        assert "GeometryError: boom" in output
