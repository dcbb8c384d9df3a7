"""Truncated Taylor series arithmetic.

``TaylorSeries`` holds c_0 + c_1 s + … + c_k s^k for one variable and
implements the classical recurrences (Leibniz products, quotient, exp,
sin, cos). ``MultiSeries`` is the d-variable analogue over total degree
<= k; its transcendental functions reuse the univariate recurrences by
composing a series expanded at the constant term with u - u(0).
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, TypeVar

import numpy as np
from scipy import signal

from clsmooth.calculus.multiindex import factorial_table, order_mask
from clsmooth.exceptions import PreconditionError, SingularityError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

__all__ = ["MultiSeries", "TaylorSeries"]

_S = TypeVar("_S", "TaylorSeries", "MultiSeries")
Scalar = int | float


def _horner(coefficients: NDArray[np.float64], delta: _S) -> _S:
    """Evaluate Σ_j c_j δ^j with a series δ whose constant term is zero."""
    result = delta * 0.0 + float(coefficients[-1])
    for c in coefficients[-2::-1]:
        result = result * delta + float(c)
    return result


class TaylorSeries:
    """Univariate truncated Taylor series of order k."""

    __slots__ = ("_c",)
    __array_ufunc__ = None

    def __init__(self, coefficients: ArrayLike, order: int | None = None) -> None:
        c = np.array(coefficients, dtype=float).ravel()
        if order is not None:
            if order < 0:
                raise PreconditionError(f"order must be >= 0, got {order}")
            padded = np.zeros(order + 1)
            size = min(order + 1, c.size)
            padded[:size] = c[:size]
            c = padded
        if c.size == 0:
            raise PreconditionError("a series needs at least one coefficient")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def constant(cls, value: float, order: int) -> TaylorSeries:
        return cls([value], order)

    @classmethod
    def variable(cls, point: float, order: int) -> TaylorSeries:
        """The identity map expanded at ``point``: point + s."""
        return cls([point, 1.0], order)

    @property
    def order(self) -> int:
        return int(self._c.size - 1)

    @property
    def coefficients(self) -> NDArray[np.float64]:
        return self._c

    @property
    def value(self) -> float:
        return float(self._c[0])

    def __len__(self) -> int:
        return int(self._c.size)

    def __getitem__(self, index: int) -> float:
        return float(self._c[index])

    def derivatives(self) -> NDArray[np.float64]:
        """Derivative values f^(j)(point) = j! c_j."""
        factorials = np.array([math.factorial(j) for j in range(self._c.size)], dtype=float)
        return self._c * factorials

    def truncate(self, order: int) -> TaylorSeries:
        return TaylorSeries(self._c, order)

    def _coerce(self, other: TaylorSeries | Scalar) -> TaylorSeries:
        if isinstance(other, TaylorSeries):
            return other
        return TaylorSeries.constant(float(other), self.order)

    def __add__(self, other: TaylorSeries | Scalar) -> TaylorSeries:
        o = self._coerce(other)
        k = min(self.order, o.order)
        return TaylorSeries(self._c[: k + 1] + o._c[: k + 1])

    __radd__ = __add__

    def __neg__(self) -> TaylorSeries:
        return TaylorSeries(-self._c)

    def __sub__(self, other: TaylorSeries | Scalar) -> TaylorSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> TaylorSeries:
        return (-self) + other

    def __mul__(self, other: TaylorSeries | Scalar) -> TaylorSeries:
        if not isinstance(other, TaylorSeries):
            return TaylorSeries(self._c * float(other))
        k = min(self.order, other.order)
        return TaylorSeries(np.convolve(self._c[: k + 1], other._c[: k + 1])[: k + 1])

    __rmul__ = __mul__

    def __truediv__(self, other: TaylorSeries | Scalar) -> TaylorSeries:
        if not isinstance(other, TaylorSeries):
            if other == 0:
                raise SingularityError("division of a series by the scalar 0")
            return TaylorSeries(self._c / float(other))
        b0 = other._c[0]
        if b0 == 0.0:
            raise SingularityError("division by a series with zero constant term")
        k = min(self.order, other.order)
        a, b = self._c, other._c
        q = np.zeros(k + 1)
        for n in range(k + 1):
            q[n] = (a[n] - np.dot(q[:n], b[n:0:-1])) / b0
        return TaylorSeries(q)

    def __rtruediv__(self, other: Scalar) -> TaylorSeries:
        return TaylorSeries.constant(float(other), self.order) / self

    def __pow__(self, exponent: int) -> TaylorSeries:
        if exponent < 0:
            raise PreconditionError(f"only non-negative integer powers, got {exponent}")
        result = TaylorSeries.constant(1.0, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def exp(self) -> TaylorSeries:
        u = self._c
        k = self.order
        e = np.zeros(k + 1)
        try:
            e[0] = math.exp(u[0])
        except OverflowError as error:
            raise SingularityError(f"exp overflows at {u[0]!r}") from error
        j = np.arange(1, k + 1, dtype=float)
        for n in range(1, k + 1):
            e[n] = np.dot(j[:n] * u[1 : n + 1], e[n - 1 :: -1][:n]) / n
        return TaylorSeries(e)

    def _sin_cos(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        u = self._c
        k = self.order
        s = np.zeros(k + 1)
        c = np.zeros(k + 1)
        s[0], c[0] = math.sin(u[0]), math.cos(u[0])
        j = np.arange(1, k + 1, dtype=float)
        for n in range(1, k + 1):
            weighted = j[:n] * u[1 : n + 1]
            s[n] = np.dot(weighted, c[n - 1 :: -1][:n]) / n
            c[n] = -np.dot(weighted, s[n - 1 :: -1][:n]) / n
        return s, c

    def sin(self) -> TaylorSeries:
        return TaylorSeries(self._sin_cos()[0])

    def cos(self) -> TaylorSeries:
        return TaylorSeries(self._sin_cos()[1])

    def compose(self, inner: _S) -> _S:
        """Substitute ``inner`` into this series.

        ``self`` is read as the expansion of some f at inner's constant term,
        so the result is Σ_j c_j (inner - inner(0))^j, truncated to the
        smaller order.
        """
        k = min(self.order, inner.order)
        delta = (inner - inner.value).truncate(k)
        return _horner(self._c[: k + 1], delta)

    def __repr__(self) -> str:
        return f"TaylorSeries({self._c.tolist()!r})"


class MultiSeries:
    """Truncated Taylor series in d variables over total degree <= k.

    Coefficients live in a dense array of shape (k+1,)*d whose entry at
    α is the coefficient of s^α; entries with |α| > k are kept at zero.
    """

    __slots__ = ("_c", "_order")
    __array_ufunc__ = None

    def __init__(self, coefficients: ArrayLike, order: int) -> None:
        c = np.array(coefficients, dtype=float)
        if c.ndim < 1 or any(n != order + 1 for n in c.shape):
            raise PreconditionError(
                f"coefficient array of shape {c.shape} does not match order {order}"
            )
        c[~order_mask(c.ndim, order)] = 0.0
        c.setflags(write=False)
        self._c = c
        self._order = order

    @classmethod
    def constant(cls, value: float, dimension: int, order: int) -> MultiSeries:
        c = np.zeros((order + 1,) * dimension)
        c[(0,) * dimension] = value
        return cls(c, order)

    @classmethod
    def variable(cls, point: float, axis: int, dimension: int, order: int) -> MultiSeries:
        """The coordinate x_axis expanded at a point whose axis-coordinate is ``point``."""
        c = np.zeros((order + 1,) * dimension)
        c[(0,) * dimension] = point
        if order >= 1:
            index = [0] * dimension
            index[axis] = 1
            c[tuple(index)] = 1.0
        return cls(c, order)

    @classmethod
    def from_univariate(cls, series: TaylorSeries, axis: int, dimension: int) -> MultiSeries:
        """Embed f(x_axis) as a function of all d variables."""
        k = series.order
        c = np.zeros((k + 1,) * dimension)
        index: list[int | slice] = [0] * dimension
        index[axis] = slice(None)
        c[tuple(index)] = series.coefficients
        return cls(c, k)

    @classmethod
    def product_of(cls, factors: Sequence[TaylorSeries]) -> MultiSeries:
        """Separable product Π_i f_i(x_i) from one univariate factor per axis."""
        k = min(f.order for f in factors)
        c = np.ones(())
        for f in factors:
            c = np.multiply.outer(c, f.coefficients[: k + 1])
        return cls(c, k)

    @property
    def order(self) -> int:
        return self._order

    @property
    def dimension(self) -> int:
        return int(self._c.ndim)

    @property
    def coefficients(self) -> NDArray[np.float64]:
        return self._c

    @property
    def value(self) -> float:
        return float(self._c[(0,) * self._c.ndim])

    def derivative_table(self) -> NDArray[np.float64]:
        """∂^α values c_α · α! over the dense index grid."""
        return self._c * factorial_table(self.dimension, self._order)

    def truncate(self, order: int) -> MultiSeries:
        if order > self._order:
            raise PreconditionError(f"cannot raise order {self._order} to {order}")
        return MultiSeries(self._c[(slice(0, order + 1),) * self.dimension], order)

    def _aligned(self, other: MultiSeries) -> tuple[NDArray[np.float64], NDArray[np.float64], int]:
        if other.dimension != self.dimension:
            raise PreconditionError(
                f"dimension mismatch: {self.dimension} vs {other.dimension}"
            )
        k = min(self._order, other._order)
        window = (slice(0, k + 1),) * self.dimension
        return self._c[window], other._c[window], k

    def __add__(self, other: MultiSeries | Scalar) -> MultiSeries:
        if not isinstance(other, MultiSeries):
            c = self._c.copy()
            c[(0,) * self.dimension] += float(other)
            return MultiSeries(c, self._order)
        a, b, k = self._aligned(other)
        return MultiSeries(a + b, k)

    __radd__ = __add__

    def __neg__(self) -> MultiSeries:
        return MultiSeries(-self._c, self._order)

    def __sub__(self, other: MultiSeries | Scalar) -> MultiSeries:
        return self + (-other)

    def __rsub__(self, other: Scalar) -> MultiSeries:
        return (-self) + other

    def __mul__(self, other: MultiSeries | Scalar) -> MultiSeries:
        if not isinstance(other, MultiSeries):
            return MultiSeries(self._c * float(other), self._order)
        a, b, k = self._aligned(other)
        full = signal.convolve(a, b, method="direct")
        return MultiSeries(full[(slice(0, k + 1),) * self.dimension], k)

    __rmul__ = __mul__

    def reciprocal(self) -> MultiSeries:
        u0 = self.value
        if u0 == 0.0:
            raise SingularityError("division by a series with zero constant term")
        outer = 1.0 / TaylorSeries.variable(u0, self._order)
        return outer.compose(self)

    def __truediv__(self, other: MultiSeries | Scalar) -> MultiSeries:
        if not isinstance(other, MultiSeries):
            if other == 0:
                raise SingularityError("division of a series by the scalar 0")
            return MultiSeries(self._c / float(other), self._order)
        return self * other.reciprocal()

    def __rtruediv__(self, other: Scalar) -> MultiSeries:
        return self.reciprocal() * float(other)

    def __pow__(self, exponent: int) -> MultiSeries:
        if exponent < 0:
            raise PreconditionError(f"only non-negative integer powers, got {exponent}")
        result = MultiSeries.constant(1.0, self.dimension, self._order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def apply(self, outer: TaylorSeries) -> MultiSeries:
        """Compose with a univariate series expanded at this series' value."""
        return outer.compose(self)

    def exp(self) -> MultiSeries:
        return self.apply(TaylorSeries.variable(self.value, self._order).exp())

    def sin(self) -> MultiSeries:
        return self.apply(TaylorSeries.variable(self.value, self._order).sin())

    def cos(self) -> MultiSeries:
        return self.apply(TaylorSeries.variable(self.value, self._order).cos())

    def scale_axes(self, factors: Sequence[float]) -> MultiSeries:
        """Series of x ↦ f(λ_1 x_1, …, λ_d x_d): coefficient α gains Π λ_i^α_i."""
        k = self._order
        scale = np.ones(())
        for lam in factors:
            scale = np.multiply.outer(scale, float(lam) ** np.arange(k + 1))
        return MultiSeries(self._c * scale, k)

    def __repr__(self) -> str:
        return f"MultiSeries(order={self._order}, dimension={self.dimension})"
