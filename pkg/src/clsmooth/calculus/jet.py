"""Jets: every partial derivative up to a fixed order at one point."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from clsmooth.calculus.multiindex import MultiIndex, factorial_table, multi_indices, order_mask
from clsmooth.calculus.series import MultiSeries
from clsmooth.exceptions import PreconditionError

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping, Sequence

    from numpy.typing import ArrayLike, NDArray

__all__ = ["Jet"]


@dataclass(frozen=True, eq=False)
class Jet:
    """All ∂^α γ(x) for |α| <= order, with values in R^m.

    ``values`` has shape (order+1,)*d + (m,); the entry at α holds ∂^α γ(x)
    and entries with |α| > order are zero. The array is read-only.
    """

    __array_ufunc__ = None

    basepoint: tuple[float, ...]
    order: int
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        point = tuple(float(v) for v in self.basepoint)
        d = len(point)
        if d < 1:
            raise PreconditionError("jet basepoint must have at least one coordinate")
        if self.order < 0:
            raise PreconditionError(f"jet order must be >= 0, got {self.order}")
        values = np.array(self.values, dtype=float)
        expected = (self.order + 1,) * d
        if values.ndim != d + 1 or values.shape[:d] != expected or values.shape[-1] < 1:
            raise PreconditionError(
                f"jet table of shape {values.shape} does not fit d={d}, order={self.order}"
            )
        if not np.all(np.isfinite(values)):
            raise PreconditionError(f"jet at {point} has non-finite entries")
        values[~order_mask(d, self.order)] = 0.0
        values.setflags(write=False)
        object.__setattr__(self, "basepoint", point)
        object.__setattr__(self, "values", values)

    @classmethod
    def zero(cls, basepoint: Sequence[float], order: int, target_dim: int) -> Jet:
        d = len(basepoint)
        return cls(tuple(basepoint), order, np.zeros((order + 1,) * d + (target_dim,)))

    @classmethod
    def from_series(cls, basepoint: Sequence[float], components: Sequence[MultiSeries]) -> Jet:
        """Build a jet from one Taylor series per output component."""
        if not components:
            raise PreconditionError("a jet needs at least one component")
        order = min(s.order for s in components)
        tables = [s.truncate(order).derivative_table() for s in components]
        return cls(tuple(basepoint), order, np.stack(tables, axis=-1))

    @classmethod
    def from_table(
        cls,
        basepoint: Sequence[float],
        order: int,
        table: Mapping[MultiIndex, ArrayLike],
    ) -> Jet:
        """Build a jet from an explicit α → value map; missing entries are zero."""
        d = len(basepoint)
        first = np.atleast_1d(np.asarray(next(iter(table.values())), dtype=float))
        values = np.zeros((order + 1,) * d + (first.size,))
        for alpha, v in table.items():
            if alpha.order > order:
                raise PreconditionError(f"|{alpha}| exceeds jet order {order}")
            values[alpha.entries] = np.atleast_1d(np.asarray(v, dtype=float))
        return cls(tuple(basepoint), order, values)

    @property
    def dimension(self) -> int:
        return len(self.basepoint)

    @property
    def target_dim(self) -> int:
        return int(self.values.shape[-1])

    @property
    def value(self) -> NDArray[np.float64]:
        """γ(x), the α = 0 entry."""
        return self.values[(0,) * self.dimension]

    def __getitem__(self, alpha: MultiIndex | tuple[int, ...]) -> NDArray[np.float64]:
        entries = alpha.entries if isinstance(alpha, MultiIndex) else tuple(alpha)
        if len(entries) != self.dimension:
            raise PreconditionError(
                f"multi-index {entries} has wrong length for d={self.dimension}"
            )
        if sum(entries) > self.order:
            raise PreconditionError(f"|{entries}| exceeds jet order {self.order}")
        return self.values[entries]

    def items(self) -> Iterator[tuple[MultiIndex, NDArray[np.float64]]]:
        for alpha in multi_indices(self.dimension, self.order):
            yield alpha, self.values[alpha.entries]

    def table(self) -> dict[MultiIndex, tuple[float, ...]]:
        return {alpha: tuple(float(v) for v in vec) for alpha, vec in self.items()}

    def truncate(self, order: int) -> Jet:
        if order > self.order:
            raise PreconditionError(f"cannot raise jet order {self.order} to {order}")
        window = (slice(0, order + 1),) * self.dimension
        return Jet(self.basepoint, order, self.values[window])

    def taylor_coefficients(self) -> NDArray[np.float64]:
        """∂^α γ(x) / α! over the dense index grid, shape as ``values``."""
        return self.values / factorial_table(self.dimension, self.order)[..., np.newaxis]

    def component(self, index: int) -> MultiSeries:
        """The Taylor series of one output component."""
        return MultiSeries(self.taylor_coefficients()[..., index], self.order)

    def components(self) -> list[MultiSeries]:
        return [self.component(i) for i in range(self.target_dim)]

    def select(self, indices: Sequence[int]) -> Jet:
        return Jet(self.basepoint, self.order, self.values[..., list(indices)])

    def __add__(self, other: Jet) -> Jet:
        if other.order != self.order or other.values.shape != self.values.shape:
            raise PreconditionError("cannot add jets of different shape")
        return Jet(self.basepoint, self.order, self.values + other.values)

    def __mul__(self, scalar: float) -> Jet:
        return Jet(self.basepoint, self.order, self.values * float(scalar))

    __rmul__ = __mul__

    def max_abs_difference(self, other: Jet) -> float:
        return float(np.max(np.abs(self.values - other.values)))
