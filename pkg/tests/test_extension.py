"""Tests for clsmooth.extension: weights, face extensions, gluing and lifting."""

from __future__ import annotations

import math

import numpy as np
import pytest

from clsmooth.exceptions import ExtensionError, PluginError, PreconditionError
from clsmooth.extension import (
    AxisExtension,
    default_nodes,
    extend_corner,
    extend_cube,
    extend_halfspace,
    face_jump,
    lift_componentwise,
    projection_extension,
    solve_axis_weights,
)
from clsmooth.registry import default_registry
from clsmooth.smoothing.provider import ExpressionProvider, provider_value


def _provider(text: str, dimension: int = 1) -> ExpressionProvider:
    return ExpressionProvider.from_text(text, dimension)


class TestAxisWeights:
    def test_default_nodes(self):
        assert default_nodes(2) == (1.0, 2.0, 3.0)

    def test_first_order_weights(self):
        assert solve_axis_weights(1).tolist() == pytest.approx([3.0, -2.0])

    def test_moment_conditions(self):
        ext = AxisExtension.build(4)
        assert float(np.max(ext.residuals())) < 1e-9

    def test_custom_nodes(self):
        weights = solve_axis_weights(1, (0.5, 1.0))
        assert weights.tolist() == pytest.approx([4.0, -3.0])

    @pytest.mark.parametrize("nodes", [(1.0, 1.0), (-1.0, 2.0), (1.0, 2.0, 3.0)])
    def test_invalid_nodes(self, nodes: tuple[float, ...]):
        with pytest.raises(ExtensionError):
            solve_axis_weights(1, nodes)

    def test_order_out_of_range(self):
        with pytest.raises(ExtensionError):
            solve_axis_weights(7)

    def test_cutoff_profile(self):
        ext = AxisExtension.build(1)
        assert ext.collar_end == 0.125
        assert ext.cutoff_end == 0.25
        assert ext.cutoff(0.1) == 1.0
        assert ext.cutoff(0.3) == 0.0
        assert 0.0 < ext.cutoff(0.2) < 1.0

    def test_perturbed_copy(self):
        ext = AxisExtension.build(1)
        shifted = ext.perturbed(0, 0.5)
        assert shifted.weights.tolist() == pytest.approx([3.5, -2.0])
        assert ext.weights.tolist() == pytest.approx([3.0, -2.0])


class TestHalfspace:
    def test_reflects_linear_function(self):
        extended = extend_halfspace(_provider("x1"), 1)
        assert provider_value(extended, (-0.1,))[0] == pytest.approx(-0.1)

    def test_source_side_unchanged(self):
        extended = extend_halfspace(_provider("exp(x1)"), 2)
        assert provider_value(extended, (0.4,))[0] == pytest.approx(math.exp(0.4))

    def test_zero_beyond_cutoff(self):
        extended = extend_halfspace(_provider("x1 + 5"), 1)
        assert provider_value(extended, (-0.25,))[0] == 0.0
        assert provider_value(extended, (-3.0,))[0] == 0.0

    def test_lower_side(self):
        extended = extend_halfspace(_provider("x1^2"), 2, boundary=1.0, side=-1)
        assert provider_value(extended, (1.05,))[0] == pytest.approx(1.05**2)

    def test_face_is_smooth(self):
        extended = extend_halfspace(_provider("cos(x1)"), 2)
        assert face_jump(extended, 0, 0.0, (0.0,), 2) < 1e-4

    def test_perturbed_weights_break_the_face(self):
        ext = AxisExtension.build(2).perturbed(0, 1e-3)
        extended = extend_halfspace(_provider("cos(x1)"), 2, axis_extension=ext)
        assert face_jump(extended, 0, 0.0, (0.0,), 2) > 1e-4

    def test_restriction_error(self):
        extended = extend_halfspace(_provider("sin(x1)"), 2)
        assert extended.restriction_error([(0.0,), (0.3,), (2.0,)]) == 0.0

    def test_restriction_outside_region(self):
        extended = extend_halfspace(_provider("sin(x1)"), 2)
        with pytest.raises(PreconditionError, match="outside"):
            extended.restriction_error([(-0.1,)])

    def test_mismatched_axis_extension(self):
        with pytest.raises(PreconditionError):
            extend_halfspace(_provider("x1"), 2, axis_extension=AxisExtension.build(1))

    def test_descriptor(self):
        data = extend_halfspace(_provider("x1"), 1).descriptor()
        assert data["operator"] == "halfspace"
        assert data["axis"]["weights"] == pytest.approx([3.0, -2.0])


class TestCornerAndCube:
    def test_corner_reproduces_bilinear(self):
        extended = extend_corner(_provider("x1*x2", 2), 1, axes=2)
        assert provider_value(extended, (-0.05, -0.05))[0] == pytest.approx(0.0025)

    def test_corner_axes_range(self):
        with pytest.raises(PreconditionError):
            extend_corner(_provider("x1", 1), 1, axes=2)

    def test_cube_example(self):
        extended = extend_cube(_provider("x1 + x2", 2), 1)
        assert provider_value(extended, (-0.05, 0.5))[0] == pytest.approx(0.45)

    def test_cube_upper_face(self):
        extended = extend_cube(_provider("x1^2"), 2)
        assert provider_value(extended, (1.05,))[0] == pytest.approx(1.05**2)
        assert provider_value(extended, (2.0,))[0] == 0.0

    def test_axis_order_does_not_matter(self):
        provider = _provider("sin(x1)*exp(x2)", 2)
        a = extend_cube(provider, 2, axis_order=(0, 1))
        b = extend_cube(provider, 2, axis_order=(1, 0))
        for x in [(-0.04, 1.03), (1.02, -0.05), (0.5, -0.03)]:
            assert provider_value(a, x)[0] == pytest.approx(provider_value(b, x)[0], abs=1e-10)

    def test_bad_axis_order(self):
        with pytest.raises(PreconditionError, match="permutation"):
            extend_cube(_provider("x1", 2), 1, axis_order=(0, 0))

    def test_cube_is_linear(self):
        f, g = _provider("sin(x1)"), _provider("x1^3")
        both = _provider("2*sin(x1) - x1^3")
        x = (-0.06,)
        expected = 2.0 * provider_value(extend_cube(f, 2), x)[0] - provider_value(
            extend_cube(g, 2), x
        )[0]
        assert provider_value(extend_cube(both, 2), x)[0] == pytest.approx(expected, abs=1e-12)


class TestProjection:
    def test_constant_along_slice_directions(self):
        extended = projection_extension(_provider("x1^2"), (0.5,))
        assert extended.dimension == 2
        assert provider_value(extended, (2.0, 7.0))[0] == pytest.approx(4.0)
        jet = extended.jet((2.0, 7.0), 1)
        assert jet[(1, 0)][0] == pytest.approx(4.0)
        assert jet[(0, 1)][0] == 0.0

    def test_restriction_on_slice(self):
        extended = projection_extension(_provider("x1^2"), (0.5,))
        assert extended.restriction_error([(1.0, 0.5), (-2.0, 0.5)]) == 0.0
        with pytest.raises(PreconditionError):
            extended.restriction_error([(1.0, 0.6)])


class TestLifting:
    def test_componentwise_halfspace(self):
        lifted = lift_componentwise("halfspace", _provider("x1; x1^2"), 2)
        assert lifted.target_dim == 2
        assert provider_value(lifted, (-0.05,)).tolist() == pytest.approx([-0.05, 0.0025])

    def test_componentwise_cube(self):
        lifted = lift_componentwise("cube", _provider("x1; 1"), 1)
        assert provider_value(lifted, (1.1,)).tolist() == pytest.approx([1.1, 1.0])

    def test_unknown_operator(self):
        with pytest.raises(PluginError, match="Unknown operator"):
            lift_componentwise("spline", _provider("x1"), 1)


class TestRegistry:
    def test_builtins_registered(self):
        assert default_registry.list_operators("extension") == [
            "corner",
            "cube",
            "dugundji",
            "halfspace",
            "projection",
        ]

    def test_create_by_name(self):
        extended = default_registry.create("extension", "cube", _provider("x1"), 1)
        assert provider_value(extended, (0.3,))[0] == pytest.approx(0.3)

