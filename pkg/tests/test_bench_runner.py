"""Tests for clsmooth.bench.runner: convergence tables, bound certificate, rates."""

from __future__ import annotations

import math

import pytest

from clsmooth.bench.runner import (
    bound_certificate,
    box_grid,
    convergence_report,
    growth_table,
    rate_fit,
    uniform_family_report,
)
from clsmooth.bench.types import ConvergenceRow, ConvergenceTable
from clsmooth.exceptions import GeometryError, PreconditionError
from clsmooth.geometry import Box, BoxUnion, default_exhaustion
from clsmooth.partition import h0_norm, smoothing_constant
from clsmooth.smoothing.provider import ExpressionProvider

OMEGA = BoxUnion.cube(1, -2.0, 2.0)
K = Box((-1.0,), (1.0,))


def _provider(text: str, dimension: int = 1) -> ExpressionProvider:
    return ExpressionProvider.from_text(text, dimension)


class TestBoxGrid:
    def test_one_dimensional(self):
        assert box_grid(Box((0.0,), (1.0,)), 3) == [(0.0,), (0.5,), (1.0,)]

    def test_tensor_grid(self):
        assert len(box_grid(Box.cube(2, 0.0, 1.0), 4)) == 16

    def test_unbounded(self):
        with pytest.raises(GeometryError):
            box_grid(Box((-math.inf,), (0.0,)), 3)

    def test_too_few_points(self):
        with pytest.raises(PreconditionError):
            box_grid(K, 1)


class TestConvergenceReport:
    def test_rows_follow_scales(self):
        table = convergence_report(_provider("sin(x1)"), OMEGA, 1, K, [4, 8, 16], grid_points=9)
        assert [r.n for r in table.rows] == [4, 8, 16]
        assert all(len(r.errors) == 2 for r in table.rows)
        assert table.strictly_decreasing
        assert table.compact == ((-1.0, 1.0),)

    def test_errors_are_cumulative(self):
        table = convergence_report(_provider("exp(x1)"), OMEGA, 2, K, [8], grid_points=5)
        errors = table.rows[0].errors
        assert list(errors) == sorted(errors)

    def test_polynomials_reproduced(self):
        table = convergence_report(_provider("2*x1 - 1"), OMEGA, 1, K, [4, 8], grid_points=9)
        assert max(max(r.errors) for r in table.rows) < 1e-10

    def test_margin_must_fit_domain(self):
        with pytest.raises(GeometryError):
            convergence_report(_provider("x1"), BoxUnion.cube(1, -1.0, 1.0), 1, K, [4])

    def test_stage_table(self):
        omega = BoxUnion.cube(1, 0.0, 1.0)
        ex = default_exhaustion(omega, 2)
        table = convergence_report(
            _provider("sin(x1)"),
            omega,
            1,
            Box((0.4,), (0.6,)),
            [1, 2],
            operator="stages",
            exhaustion=ex,
            grid_points=5,
        )
        assert table.operator == "stages"
        assert [r.n for r in table.rows] == [1, 2]

    def test_stage_table_needs_exhaustion(self):
        with pytest.raises(PreconditionError, match="exhaustion"):
            convergence_report(_provider("x1"), OMEGA, 1, K, [1], operator="stages")

    def test_scales_required(self):
        with pytest.raises(PreconditionError):
            convergence_report(_provider("x1"), OMEGA, 1, K, [])


class TestBoundCertificate:
    def test_sine_within_bound(self):
        certificate = bound_certificate(
            [("sine", _provider("sin(x1)"))],
            OMEGA,
            1,
            K,
            Box((-1.5,), (1.5,)),
            4,
            grid_points=5,
            samples=64,
            growth_orders=range(2),
        )
        assert certificate.passed
        assert certificate.constant == pytest.approx(
            smoothing_constant(1, 1, h0_norm(1, 1).value)
        )
        assert certificate.error_constant == pytest.approx(certificate.constant - 1.0)
        assert [g.order for g in certificate.growth] == [0, 1]
        assert certificate.rows[0].ratio <= certificate.constant

    def test_outer_compact_must_contain_margin(self):
        with pytest.raises(GeometryError, match="not inside L"):
            bound_certificate(
                [("sine", _provider("sin(x1)"))], OMEGA, 1, K, Box((-1.1,), (1.1,)), 4
            )

    def test_needs_functions(self):
        with pytest.raises(PreconditionError):
            bound_certificate([], OMEGA, 1, K, Box((-1.5,), (1.5,)), 4)


class TestGrowthAndRates:
    def test_growth_factor(self):
        rows = growth_table(1, range(3))
        assert [r.factor for r in rows] == [4.0, 16.0, 192.0]
        assert rows[0].constant == pytest.approx(1.0 + 4.0 * rows[0].h0)

    def test_rate_fit(self):
        rows = tuple(ConvergenceRow(n, (1.0 / n**2,)) for n in (4, 8, 16))
        fit = rate_fit(ConvergenceTable("f", "stilde", 0, ((0.0, 1.0),), rows))
        assert fit.slope == pytest.approx(-2.0)
        assert fit.points == 3
        assert fit.below_threshold

    def test_rate_fit_needs_two_points(self):
        rows = (ConvergenceRow(4, (0.0,)), ConvergenceRow(8, (0.1,)))
        fit = rate_fit(ConvergenceTable("f", "stilde", 0, ((0.0, 1.0),), rows))
        assert math.isnan(fit.slope)
        assert fit.points == 1


class TestUniformFamily:
    def test_sup_over_parameters(self):
        report = uniform_family_report(1, [4, 8], [1.0, 2.0], K, OMEGA, grid_points=5)
        assert [r.n for r in report.rows] == [4, 8]
        assert all(r.worst_parameter in (1.0, 2.0) for r in report.rows)
        assert report.strictly_decreasing

    def test_one_dimensional_only(self):
        with pytest.raises(PreconditionError):
            uniform_family_report(
                1, [4], [1.0], Box.cube(2, 0.0, 1.0), BoxUnion.cube(2, -1.0, 2.0)
            )
