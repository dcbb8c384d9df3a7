"""Extension operators: half-space, corner, cube, projection and lifting.

Every operator wraps a source provider and is itself a provider, so
extensions compose (corner = iterated half-spaces, cube = iterated
two-sided gluings) and feed directly into the smoothing operators.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from clsmooth.calculus.jet import Jet
from clsmooth.calculus.multiindex import MAX_ORDER, check_order, factorial_table
from clsmooth.calculus.series import MultiSeries
from clsmooth.exceptions import PreconditionError
from clsmooth.extension.axis import AxisExtension
from clsmooth.geometry.boxes import Box, BoxUnion
from clsmooth.registry import OperatorRegistry, default_registry
from clsmooth.smoothing.provider import ComponentProvider, StackedProvider

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from clsmooth.types import JetProvider

__all__ = [
    "ExtendedFunction",
    "HalfspaceExtension",
    "IntervalExtension",
    "ProjectionExtension",
    "extend_corner",
    "extend_cube",
    "extend_halfspace",
    "face_jump",
    "lift_componentwise",
    "projection_extension",
]

logger = logging.getLogger(__name__)


def _axis_factors(dimension: int, axis: int, order: int, factor: float) -> NDArray[np.float64]:
    """Array over the index grid holding factor^α_axis."""
    shape = [1] * dimension
    shape[axis] = order + 1
    return (factor ** np.arange(order + 1)).reshape(shape)


@dataclass(frozen=True)
class HalfspaceExtension:
    """Reflection across x_axis = boundary.

    ``side = +1`` extends a source living on {x_axis >= boundary},
    ``side = -1`` one living on {x_axis <= boundary}. Distances beyond the
    face are measured in units of ``length``.
    """

    source: JetProvider
    axis: int
    boundary: float
    side: int
    axis_extension: AxisExtension
    length: float = 1.0

    def __post_init__(self) -> None:
        if self.side not in (1, -1):
            raise PreconditionError(f"side must be +1 or -1, got {self.side}")
        d = self.source.dimension
        if not 0 <= self.axis < d:
            raise PreconditionError(f"axis {self.axis} out of range for d={d}")
        if self.length <= 0:
            raise PreconditionError(f"length must be positive, got {self.length}")

    @property
    def dimension(self) -> int:
        return self.source.dimension

    @property
    def target_dim(self) -> int:
        return self.source.target_dim

    def in_source(self, x: Sequence[float]) -> bool:
        return self.side * (float(x[self.axis]) - self.boundary) >= 0.0

    def jet(self, x: Sequence[float], order: int) -> Jet:
        check_order(order, MAX_ORDER)
        point = tuple(float(v) for v in x)
        if self.in_source(point):
            return self.source.jet(point, order)
        d = self.dimension
        c = self.boundary
        t = self.side * (c - point[self.axis]) / self.length
        ext = self.axis_extension
        if t >= ext.cutoff_end:
            return Jet.zero(point, order, self.target_dim)
        reflected = np.zeros((order + 1,) * d + (self.target_dim,))
        for a, b in zip(ext.weights, ext.nodes, strict=True):
            image = list(point)
            image[self.axis] = c - b * (point[self.axis] - c)
            values = self.source.jet(image, order).values
            reflected += a * values * _axis_factors(d, self.axis, order, -b)[..., np.newaxis]
        chi = ext.cutoff_series(t, order)
        if chi.order == 0 or not np.any(chi.coefficients[1:]):
            return Jet(point, order, reflected * chi.value)
        # t = side·(c - x_axis)/length, so d/dx_axis carries -side/length.
        chi_x = MultiSeries.from_univariate(chi, self.axis, d).scale_axes(
            [(-self.side / self.length) if i == self.axis else 1.0 for i in range(d)]
        )
        factorials = factorial_table(d, order)[..., np.newaxis]
        taylor = reflected / factorials
        products = [
            (chi_x * MultiSeries(taylor[..., i], order)).coefficients
            for i in range(self.target_dim)
        ]
        return Jet(point, order, np.stack(products, axis=-1) * factorials)


@dataclass(frozen=True)
class IntervalExtension:
    """Two-sided gluing across lower <= x_axis <= upper.

    Inside the slab the source is returned unchanged, so both reflected
    branches agree with it there and the glued map is well defined.
    """

    source: JetProvider
    axis: int
    lower: float
    upper: float
    axis_extension: AxisExtension

    def __post_init__(self) -> None:
        if not self.lower < self.upper:
            raise PreconditionError(f"empty slab [{self.lower}, {self.upper}]")

    @property
    def dimension(self) -> int:
        return self.source.dimension

    @property
    def target_dim(self) -> int:
        return self.source.target_dim

    def _branch(self, side: int) -> HalfspaceExtension:
        boundary = self.lower if side == 1 else self.upper
        return HalfspaceExtension(
            self.source, self.axis, boundary, side, self.axis_extension, self.upper - self.lower
        )

    def jet(self, x: Sequence[float], order: int) -> Jet:
        v = float(x[self.axis])
        if v < self.lower:
            return self._branch(1).jet(x, order)
        if v > self.upper:
            return self._branch(-1).jet(x, order)
        return self.source.jet(x, order)


@dataclass(frozen=True)
class ExtendedFunction:
    """An extended provider plus the region on which it reproduces its source."""

    source: JetProvider
    extended: JetProvider
    region: BoxUnion
    operator: str
    axis_extension: AxisExtension | None = None

    @property
    def dimension(self) -> int:
        return self.extended.dimension

    @property
    def target_dim(self) -> int:
        return self.extended.target_dim

    def jet(self, x: Sequence[float], order: int) -> Jet:
        return self.extended.jet(x, order)

    def restriction_error(self, points: Sequence[Sequence[float]]) -> float:
        """max |E(γ)(x) - γ(x)| over source-region points.

        The source sees the leading coordinates of x only, which matters
        for the projection extension from a slice.
        """
        d_source = self.source.dimension
        worst = 0.0
        for x in points:
            if not self.region.contains(x):
                raise PreconditionError(f"{tuple(x)} lies outside the source region")
            extended = self.jet(x, 0).value
            original = self.source.jet(tuple(x)[:d_source], 0).value
            worst = max(worst, float(np.max(np.abs(extended - original))))
        return worst

    def descriptor(self) -> dict[str, Any]:
        data: dict[str, Any] = {"operator": self.operator, "region": self.region.to_json()}
        if self.axis_extension is not None:
            data["axis"] = self.axis_extension.to_dict()
        return data


def _axis_extension(
    order: int, nodes: Sequence[float] | None, axis_extension: AxisExtension | None
) -> AxisExtension:
    if axis_extension is not None:
        if axis_extension.order != order:
            raise PreconditionError("axis extension order does not match")
        return axis_extension
    return AxisExtension.build(order, tuple(nodes) if nodes else None)


def extend_halfspace(
    provider: JetProvider,
    order: int,
    *,
    axis: int = 0,
    boundary: float = 0.0,
    side: int = 1,
    nodes: Sequence[float] | None = None,
    axis_extension: AxisExtension | None = None,
) -> ExtendedFunction:
    """Extend γ from {side·(x_axis - boundary) >= 0} to R^d."""
    ext = _axis_extension(order, nodes, axis_extension)
    d = provider.dimension
    lower = [-np.inf] * d
    upper = [np.inf] * d
    if side == 1:
        lower[axis] = boundary
    else:
        upper[axis] = boundary
    region = BoxUnion((Box(tuple(lower), tuple(upper)),), open=False)
    extended = HalfspaceExtension(provider, axis, boundary, side, ext)
    return ExtendedFunction(provider, extended, region, "halfspace", ext)


def extend_corner(
    provider: JetProvider,
    order: int,
    *,
    axes: int = 1,
    nodes: Sequence[float] | None = None,
    axis_extension: AxisExtension | None = None,
) -> ExtendedFunction:
    """Extend γ from [0,∞)^M × R^{d-M} by half-space extensions along axes 0..M-1."""
    d = provider.dimension
    if not 1 <= axes <= d:
        raise PreconditionError(f"corner axes must be in [1, {d}], got {axes}")
    ext = _axis_extension(order, nodes, axis_extension)
    current: JetProvider = provider
    for axis in range(axes):
        current = HalfspaceExtension(current, axis, 0.0, 1, ext)
    lower = tuple(0.0 if i < axes else -np.inf for i in range(d))
    region = BoxUnion((Box(lower, (np.inf,) * d),), open=False)
    return ExtendedFunction(provider, current, region, "corner", ext)


def extend_cube(
    provider: JetProvider,
    order: int,
    *,
    nodes: Sequence[float] | None = None,
    axis_order: Sequence[int] | None = None,
    axis_extension: AxisExtension | None = None,
) -> ExtendedFunction:
    """Extend γ from [0,1]^d to R^d, one two-sided gluing per axis.

    The gluing along ``axis_order[0]`` is applied first (innermost).
    """
    d = provider.dimension
    order_of_axes = list(range(d)) if axis_order is None else list(axis_order)
    if sorted(order_of_axes) != list(range(d)):
        raise PreconditionError(f"axis order must be a permutation of 0..{d - 1}")
    ext = _axis_extension(order, nodes, axis_extension)
    current: JetProvider = provider
    for axis in order_of_axes:
        current = IntervalExtension(current, axis, 0.0, 1.0, ext)
    region = BoxUnion.cube(d, 0.0, 1.0, open=False)
    return ExtendedFunction(provider, current, region, "cube", ext)


@dataclass(frozen=True)
class ProjectionExtension:
    """E(γ)(x, y) = γ(x): extension from the slice R^{d1} × {c} along the projection."""

    source: JetProvider
    slice_values: tuple[float, ...]

    @property
    def dimension(self) -> int:
        return self.source.dimension + len(self.slice_values)

    @property
    def target_dim(self) -> int:
        return self.source.target_dim

    def jet(self, x: Sequence[float], order: int) -> Jet:
        d1 = self.source.dimension
        if len(x) != self.dimension:
            raise PreconditionError(f"point of length {len(x)} for d={self.dimension}")
        inner = self.source.jet(tuple(x[:d1]), order).values
        values = np.zeros((order + 1,) * self.dimension + (self.target_dim,))
        values[(Ellipsis,) + (0,) * len(self.slice_values) + (slice(None),)] = inner
        return Jet(tuple(x), order, values)


def projection_extension(provider: JetProvider, slice_values: Sequence[float]) -> ExtendedFunction:
    """Extend γ from the slice {y = c} to R^{d1} × R^{d2}."""
    extended = ProjectionExtension(provider, tuple(float(v) for v in slice_values))
    d1 = provider.dimension
    lower = (-np.inf,) * d1 + extended.slice_values
    upper = (np.inf,) * d1 + extended.slice_values
    region = BoxUnion((Box(lower, upper),), open=False)
    return ExtendedFunction(provider, extended, region, "projection")


def lift_componentwise(
    name: str,
    provider: JetProvider,
    *args: Any,
    registry: OperatorRegistry | None = None,
    **kwargs: Any,
) -> StackedProvider:
    """Apply the scalar operator ``name`` to each component of γ: R^d -> R^m."""
    registry = registry or default_registry
    parts = tuple(
        registry.create("extension", name, ComponentProvider(provider, i), *args, **kwargs)
        for i in range(provider.target_dim)
    )
    return StackedProvider(parts)


def face_jump(
    provider: JetProvider,
    axis: int,
    boundary: float,
    x: Sequence[float],
    order: int,
    *,
    side: int = 1,
    step: float = 1e-7,
) -> float:
    """Largest relative gap between the one-sided jets at a face point.

    The inside jet is taken at the face itself, the outside one at
    distance ``step`` beyond it; a C^ℓ extension keeps the gap O(step).
    """
    inside = list(float(v) for v in x)
    inside[axis] = boundary
    outside = list(inside)
    outside[axis] = boundary - side * step
    a = provider.jet(inside, order).values
    b = provider.jet(outside, order).values
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a))))
