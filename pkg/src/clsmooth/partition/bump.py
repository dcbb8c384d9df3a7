"""The bump profile g, the product bump ξ and the smooth step built from g."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache
from typing import TYPE_CHECKING, ClassVar

from scipy import integrate

from clsmooth.calculus.jet import Jet
from clsmooth.calculus.multiindex import MAX_ORDER, check_order
from clsmooth.calculus.series import MultiSeries, TaylorSeries

if TYPE_CHECKING:
    from collections.abc import Sequence

__all__ = [
    "BUMP_DEFINITION",
    "BumpProfile",
    "SmoothStep",
    "bump_jet",
    "profile_integral",
    "profile_series",
    "profile_value",
]

BUMP_DEFINITION = "xi(x) = prod_i g(x_i), g(t) = exp(-1/(1-t^2)) for |t| < 1, else 0"


def profile_value(t: float) -> float:
    """g(t) = exp(-1/(1-t²)) on (-1, 1), zero elsewhere."""
    if abs(t) >= 1.0:
        return 0.0
    return math.exp(-1.0 / (1.0 - t * t))


def profile_series(t: float, order: int) -> TaylorSeries:
    """Taylor series of g at t; identically zero outside (-1, 1)."""
    if abs(t) >= 1.0:
        return TaylorSeries.constant(0.0, order)
    s = TaylorSeries.variable(t, order)
    return (-1.0 / (1.0 - s * s)).exp()


@cache
def profile_integral() -> float:
    """∫_{-1}^{1} g."""
    value, _ = integrate.quad(profile_value, -1.0, 1.0, epsabs=1e-15, epsrel=1e-13)
    return float(value)


@dataclass(frozen=True)
class BumpProfile:
    """ξ(x) = Π_i g(x_i): positive on (-1,1)^d, supported in [-1,1]^d."""

    dimension: int
    definition: ClassVar[str] = BUMP_DEFINITION

    def value(self, x: Sequence[float]) -> float:
        return math.prod(profile_value(float(v)) for v in x)

    def series(self, x: Sequence[float], order: int) -> MultiSeries:
        return MultiSeries.product_of([profile_series(float(v), order) for v in x])

    def jet(self, x: Sequence[float], order: int) -> Jet:
        return Jet.from_series(tuple(x), [self.series(x, order)])


def bump_jet(x: Sequence[float], order: int, *, max_order: int = MAX_ORDER) -> Jet:
    """Exact jet of ξ at x; the zero jet outside (-1,1)^d."""
    check_order(order, max_order)
    return BumpProfile(len(x)).jet(x, order)


@dataclass(frozen=True)
class SmoothStep:
    """R(u) = ∫_{-1}^{2u-1} g / ∫ g: 0 for u <= 0, 1 for u >= 1, monotone between.

    Realizes the collar of the interpolated family and the extension
    cutoff. Values come from adaptive quadrature, higher derivatives
    from the exact series of g.
    """

    def value(self, u: float) -> float:
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 1.0
        partial, _ = integrate.quad(
            profile_value, -1.0, 2.0 * u - 1.0, epsabs=1e-15, epsrel=1e-13
        )
        return min(1.0, max(0.0, float(partial) / profile_integral()))

    def series(self, u: float, order: int) -> TaylorSeries:
        """Taylor series of R at u, using R'(u) = 2 g(2u - 1) / ∫ g."""
        value = self.value(u)
        if order == 0:
            return TaylorSeries.constant(value, 0)
        inner = profile_series(2.0 * u - 1.0, order - 1).coefficients
        scale = 2.0 / profile_integral()
        coefficients = [value] + [
            scale * inner[j - 1] * 2.0 ** (j - 1) / j for j in range(1, order + 1)
        ]
        return TaylorSeries(coefficients)

    def __call__(self, u: float) -> float:
        return self.value(u)
