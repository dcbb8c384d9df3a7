"""Tests for clsmooth.smoothing: operators, closed forms, family and providers."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import pytest

from clsmooth.exceptions import GeometryError, PreconditionError, ReportError
from clsmooth.geometry import BoxUnion, default_exhaustion
from clsmooth.smoothing import (
    ComponentProvider,
    ExpressionProvider,
    FamilySchedule,
    LinearCombinationProvider,
    RestrictedProvider,
    SmoothedFunction,
    StackedProvider,
    build_sn,
    build_stilde,
    certify_support,
    cube_smoothing,
    difference,
    evaluate_jet,
    interpolated_family,
    load_smoothed,
    provider_value,
    save_smoothed,
    tensor_witness,
)

if TYPE_CHECKING:
    from pathlib import Path

OMEGA = BoxUnion.cube(1, -1.0, 1.0)
WINDOW = BoxUnion.cube(1, -0.5, 0.5, open=False)


def _provider(text: str, dimension: int = 1) -> ExpressionProvider:
    return ExpressionProvider.from_text(text, dimension)


class TestStilde:
    def test_reproduces_polynomials(self):
        smoothed = build_stilde(_provider("x1^2 - x1"), 2, 8, WINDOW, OMEGA)
        for x in (-0.5, -0.13, 0.0, 0.3, 0.5):
            assert smoothed.value((x,))[0] == pytest.approx(x * x - x, abs=1e-12)

    def test_jet_of_reproduced_polynomial(self):
        smoothed = build_stilde(_provider("x1^2"), 2, 8, WINDOW, OMEGA)
        jet = evaluate_jet(smoothed, (0.3,), 2)
        assert jet.value[0] == pytest.approx(0.09)
        assert jet[(1,)][0] == pytest.approx(0.6)
        assert jet[(2,)][0] == pytest.approx(2.0)

    def test_approximates_smooth_function(self):
        smoothed = build_stilde(_provider("sin(x1)"), 1, 32, WINDOW, OMEGA)
        for x in (-0.4, 0.1, 0.37):
            assert abs(smoothed.value((x,))[0] - math.sin(x)) < 1e-3

    def test_terms_ordered_and_counted(self):
        smoothed = build_stilde(_provider("x1"), 1, 4, WINDOW, OMEGA)
        assert [t.z for t in smoothed.terms] == [(-2,), (-1,), (0,), (1,), (2,)]
        assert len(smoothed) == 5
        assert smoothed.scales == [4]

    def test_strict_window_must_be_covered(self):
        window = BoxUnion.cube(1, -1.0, 1.0, open=False)
        with pytest.raises(GeometryError, match="z = "):
            build_stilde(_provider("x1"), 1, 4, window, OMEGA)

    def test_non_strict_window(self):
        window = BoxUnion.cube(1, -1.0, 1.0, open=False)
        smoothed = build_stilde(_provider("x1"), 1, 4, window, OMEGA, strict=False)
        assert len(smoothed) == 5

    def test_unbounded_window(self):
        with pytest.raises(GeometryError, match="bounded"):
            build_stilde(_provider("x1"), 1, 4, BoxUnion.whole_space(1))

    def test_bad_scale(self):
        with pytest.raises(PreconditionError):
            build_stilde(_provider("x1"), 1, 0, WINDOW)

    def test_dimension_mismatch(self):
        with pytest.raises(PreconditionError):
            build_stilde(_provider("x1", 2), 1, 4, WINDOW)


class TestSupport:
    def test_certificate_flags_escaping_terms(self):
        smoothed = build_stilde(_provider("1"), 0, 4, WINDOW)
        certificate = certify_support(smoothed, WINDOW)
        assert not certificate.ok
        assert (4, (2,)) in certificate.violations
        assert (4, (0,)) not in certificate.violations

    def test_zero_terms_are_skipped(self):
        smoothed = build_stilde(_provider("0*x1"), 0, 4, WINDOW)
        certificate = certify_support(smoothed, WINDOW)
        assert certificate.ok
        assert certificate.checked == 0


class TestExhaustionStages:
    def test_stage_is_certified(self):
        ex = default_exhaustion(BoxUnion.cube(1, 0.0, 1.0), 2)
        stage = build_sn(_provider("x1"), 1, ex, 1)
        assert stage.scales == [ex.scale(1)]
        assert certify_support(stage, ex.compact(2)).ok

    def test_stage_values(self):
        ex = default_exhaustion(BoxUnion.cube(1, 0.0, 1.0), 2)
        stage = build_sn(_provider("x1"), 1, ex, 1)
        assert stage.value((0.5,))[0] == pytest.approx(0.5)
        assert stage.value((0.97,))[0] == 0.0

    def test_stage_beyond_depth(self):
        ex = default_exhaustion(BoxUnion.cube(1, 0.0, 1.0), 1)
        with pytest.raises(GeometryError):
            build_sn(_provider("x1"), 1, ex, 2)


class TestSmoothedFunction:
    def test_combine_is_linear(self):
        a = build_stilde(_provider("x1"), 1, 4, WINDOW)
        b = build_stilde(_provider("cos(x1)"), 1, 8, WINDOW)
        combined = a.combine(b, 2.0, -1.0)
        assert combined.scales == [4, 8]
        for x in (-0.3, 0.0, 0.45):
            expected = 2.0 * a.value((x,))[0] - b.value((x,))[0]
            assert combined.value((x,))[0] == pytest.approx(expected)

    def test_scaled(self):
        a = build_stilde(_provider("exp(x1)"), 1, 4, WINDOW)
        assert a.scaled(3.0).value((0.2,))[0] == pytest.approx(3.0 * a.value((0.2,))[0])

    def test_combine_shape_mismatch(self):
        a = build_stilde(_provider("x1"), 1, 4, WINDOW)
        b = build_stilde(_provider("x1; x1"), 1, 4, WINDOW)
        with pytest.raises(PreconditionError):
            a.combine(b)

    def test_save_and_load(self, tmp_path: Path):
        smoothed = build_stilde(_provider("sin(x1)"), 2, 4, WINDOW)
        path = tmp_path / "out" / "smoothed.json"
        save_smoothed(smoothed, path)
        loaded = load_smoothed(path)
        assert loaded.to_dict() == smoothed.to_dict()
        assert loaded.value((0.1,))[0] == pytest.approx(smoothed.value((0.1,))[0])

    def test_load_missing(self, tmp_path: Path):
        with pytest.raises(ReportError, match="Failed to read"):
            load_smoothed(tmp_path / "missing.json")

    def test_malformed_data(self):
        with pytest.raises(ReportError, match="malformed"):
            SmoothedFunction.from_dict({"ell": 1})

    def test_empty_is_zero(self):
        empty = SmoothedFunction.empty(1, 1, 2)
        assert empty.value((0.3,)).tolist() == [0.0, 0.0]


class TestTensorWitness:
    def test_dependent_components_have_rank_one(self):
        smoothed = build_stilde(_provider("x1; 2*x1"), 1, 4, WINDOW)
        witness = tensor_witness(smoothed)
        assert witness.rank == 1
        assert witness.value((0.2,)).tolist() == pytest.approx(
            smoothed.value((0.2,)).tolist()
        )

    def test_independent_components_have_full_rank(self):
        smoothed = build_stilde(_provider("x1; x1^2; 1"), 2, 4, WINDOW)
        witness = tensor_witness(smoothed)
        assert witness.rank == 3
        assert len(witness.scalars) == 3
        assert witness.value((-0.35,)).tolist() == pytest.approx(
            smoothed.value((-0.35,)).tolist()
        )

    def test_empty(self):
        assert tensor_witness(SmoothedFunction.empty(1, 1, 2)).rank == 0


class TestCubeSmoothing:
    def test_reproduces_polynomial_up_to_the_boundary(self):
        smoothed = cube_smoothing(_provider("x1^2"), 2, 16)
        for x in (0.0, 0.01, 0.5, 0.97, 1.0):
            assert smoothed.value((x,))[0] == pytest.approx(x * x, abs=1e-10)

    def test_two_dimensional_product(self):
        smoothed = cube_smoothing(_provider("x1*x2", 2), 2, 16)
        assert smoothed.value((0.3, 0.7))[0] == pytest.approx(0.21, abs=1e-10)
        assert smoothed.value((0.0, 1.0))[0] == pytest.approx(0.0, abs=1e-10)

    def test_outside_cube_rejected(self):
        smoothed = cube_smoothing(_provider("x1"), 1, 8)
        with pytest.raises(GeometryError, match="outside"):
            smoothed.value((-0.1,))


class TestFamilySchedule:
    def test_times_and_scales(self):
        schedule = FamilySchedule()
        assert [schedule.time(j) for j in (1, 2, 3)] == [1.0, 0.5, 0.25]
        assert [schedule.scale(j) for j in (1, 2, 3)] == [4, 8, 16]

    def test_stage(self):
        schedule = FamilySchedule()
        assert schedule.stage(1.0) == 1
        assert schedule.stage(0.75) == 1
        assert schedule.stage(0.5) == 2
        assert schedule.stage(0.3) == 2

    def test_weight_collars(self):
        schedule = FamilySchedule()
        assert schedule.weight(1.0) == 1.0
        assert schedule.weight(0.5) == 1.0
        assert schedule.weight(0.55) == 0.0
        assert schedule.weight(0.75) == pytest.approx(0.5)

    @pytest.mark.parametrize("t", [0.0, -0.5, 1.5])
    def test_parameter_range(self, t: float):
        with pytest.raises(PreconditionError):
            FamilySchedule().stage(t)

    def test_invalid_schedule(self):
        with pytest.raises(PreconditionError):
            FamilySchedule(epsilon=0.5)
        with pytest.raises(PreconditionError):
            FamilySchedule(first_scale=0)


class TestInterpolatedFamily:
    def test_stage_times_hit_operators(self):
        provider = _provider("sin(x1)")
        family = interpolated_family(provider, 1, WINDOW, 1.0)
        assert family.to_dict() == build_stilde(provider, 1, 4, WINDOW).to_dict()

    def test_lower_collar_uses_next_stage(self):
        provider = _provider("sin(x1)")
        family = interpolated_family(provider, 1, WINDOW, 0.55)
        assert family.to_dict() == build_stilde(provider, 1, 8, WINDOW).to_dict()

    def test_blend_between_stages(self):
        provider = _provider("x1^2")
        family = interpolated_family(provider, 2, WINDOW, 0.75)
        assert family.scales == [4, 8]
        assert family.value((0.2,))[0] == pytest.approx(0.04)


class TestProviders:
    def test_source_text(self):
        assert _provider("x1 + 1").source == "(x1 + 1.0)"

    def test_dimension_defaults_to_variables(self):
        assert ExpressionProvider.from_text("x3").dimension == 3

    def test_dimension_below_variables(self):
        with pytest.raises(PreconditionError, match="uses x2"):
            ExpressionProvider.from_text("x2", 1)

    def test_configured_order_limit(self):
        provider = ExpressionProvider.from_text("sin(x1)", max_order=2)
        assert provider.jet((0.0,), 2)[(1,)][0] == pytest.approx(1.0)
        with pytest.raises(PreconditionError, match="maximum 2"):
            provider.jet((0.0,), 3)
        with pytest.raises(PreconditionError):
            ExpressionProvider.from_text("x1", max_order=7)

    def test_wrong_point_length(self):
        with pytest.raises(PreconditionError):
            _provider("x1").jet((0.0, 0.0), 1)

    def test_difference(self):
        diff = difference(_provider("x1^2"), _provider("x1"))
        assert provider_value(diff, (3.0,)).tolist() == pytest.approx([6.0])

    def test_combination_shapes_must_match(self):
        with pytest.raises(PreconditionError):
            LinearCombinationProvider(((1.0, _provider("x1")), (1.0, _provider("x1", 2))))

    def test_restricted_is_zero_outside(self):
        restricted = RestrictedProvider(_provider("x1 + 1"), WINDOW)
        assert provider_value(restricted, (0.5,)).tolist() == [1.5]
        assert not restricted.jet((0.6,), 2).values.any()

    def test_component(self):
        component = ComponentProvider(_provider("x1; 5*x1"), 1)
        assert provider_value(component, (2.0,)).tolist() == [10.0]
        with pytest.raises(PreconditionError):
            ComponentProvider(_provider("x1"), 1)

    def test_stacked(self):
        stacked = StackedProvider((_provider("x1"), _provider("x1^2; 3")))
        assert stacked.target_dim == 3
        assert provider_value(stacked, (2.0,)).tolist() == pytest.approx([2.0, 4.0, 3.0])
