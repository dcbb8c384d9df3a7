"""The Z^d-periodic partition of unity h_z and its scaled copies h_{n,z}.

h_z(x) = ξ(x - z) / Σ_w ξ(x - w). With ξ a product of one-dimensional
bumps the denominator factorizes over the axes, so h_z is the product of
one-dimensional partitions and its jets are outer products of univariate
series. Only the lattice points with |x_i - w_i| < 1 contribute.
"""

from __future__ import annotations

import itertools
import logging
import math
from functools import cache
from typing import TYPE_CHECKING

from clsmooth.calculus.jet import Jet
from clsmooth.calculus.multiindex import MAX_ORDER, check_order
from clsmooth.calculus.series import MultiSeries, TaylorSeries
from clsmooth.exceptions import InvariantError, PreconditionError
from clsmooth.partition.bump import BumpProfile, profile_series

if TYPE_CHECKING:
    from collections.abc import Sequence

__all__ = [
    "PeriodicPartition",
    "axis_partition_series",
    "partition_jet",
    "scaled_partition_jet",
]

logger = logging.getLogger(__name__)

LatticePoint = tuple[int, ...]

# g >= exp(-4/3) at the nearer of the two neighbours, so anything this small is a bug.
_DENOMINATOR_FLOOR = 1e-3


def axis_partition_series(z: int, t: float, order: int) -> TaylorSeries:
    """Series of the one-dimensional partition function h_z at t."""
    if abs(t - z) >= 1.0:
        return TaylorSeries.constant(0.0, order)
    w0 = math.floor(t)
    denominator = profile_series(t - w0, order) + profile_series(t - w0 - 1, order)
    if denominator.value < _DENOMINATOR_FLOOR:
        raise InvariantError(
            f"partition denominator {denominator.value!r} underflowed at t={t!r} (w0={w0})"
        )
    return profile_series(t - z, order) / denominator


class PeriodicPartition:
    """Accessor for h_z, h_{n,z} and their jets in dimension d."""

    def __init__(self, dimension: int, max_order: int = MAX_ORDER) -> None:
        if dimension < 1:
            raise PreconditionError(f"dimension must be >= 1, got {dimension}")
        self.dimension = dimension
        self.max_order = max_order
        self.profile = BumpProfile(dimension)

    def _check(self, x: Sequence[float], order: int) -> None:
        if len(x) != self.dimension:
            raise PreconditionError(f"point of length {len(x)} for d={self.dimension}")
        check_order(order, self.max_order)

    def active(self, x: Sequence[float]) -> list[LatticePoint]:
        """Lattice points z with h_z(x) > 0 (at most 2^d of them), sorted."""
        per_axis = []
        for v in x:
            w0 = math.floor(v)
            per_axis.append([w for w in (w0, w0 + 1) if abs(v - w) < 1.0])
        return [tuple(z) for z in itertools.product(*per_axis)]

    def scaled_active(self, n: int, x: Sequence[float]) -> list[LatticePoint]:
        """Lattice points z with h_{n,z}(x) > 0."""
        return self.active([n * float(v) for v in x])

    def series(self, z: Sequence[int], x: Sequence[float], order: int) -> MultiSeries:
        self._check(x, order)
        return MultiSeries.product_of(
            [axis_partition_series(int(zi), float(xi), order) for zi, xi in zip(z, x, strict=True)]
        )

    def value(self, z: Sequence[int], x: Sequence[float]) -> float:
        return self.series(z, x, 0).value

    def jet(self, z: Sequence[int], x: Sequence[float], order: int) -> Jet:
        return Jet.from_series(tuple(x), [self.series(z, x, order)])

    def scaled_series(
        self, n: int, z: Sequence[int], x: Sequence[float], order: int
    ) -> MultiSeries:
        """Series of h_{n,z}(x) = h_z(nx); order-j coefficients carry n^j."""
        if n < 1:
            raise PreconditionError(f"scale must be >= 1, got {n}")
        scaled = [n * float(v) for v in x]
        return self.series(z, scaled, order).scale_axes([float(n)] * self.dimension)

    def scaled_value(self, n: int, z: Sequence[int], x: Sequence[float]) -> float:
        return self.series(z, [n * float(v) for v in x], 0).value

    def scaled_jet(self, n: int, z: Sequence[int], x: Sequence[float], order: int) -> Jet:
        return Jet.from_series(tuple(x), [self.scaled_series(n, z, x, order)])


@cache
def _partition(dimension: int) -> PeriodicPartition:
    return PeriodicPartition(dimension)


def partition_jet(z: Sequence[int], x: Sequence[float], order: int) -> Jet:
    """Jet of h_z at x."""
    return _partition(len(x)).jet(z, x, order)


def scaled_partition_jet(n: int, z: Sequence[int], x: Sequence[float], order: int) -> Jet:
    """Jet of h_{n,z} at x; supported in z/n + (-1/n, 1/n)^d."""
    return _partition(len(x)).scaled_jet(n, z, x, order)
