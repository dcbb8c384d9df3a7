"""Vector-valued polynomials in monomial form, Taylor and Gâteaux polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.special import comb

from clsmooth.calculus.jet import Jet
from clsmooth.calculus.multiindex import (
    MultiIndex,
    factorial_table,
    multi_indices,
    order_mask,
)
from clsmooth.exceptions import PreconditionError

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping, Sequence

    from numpy.typing import ArrayLike, NDArray

__all__ = ["PolynomialMap", "gateaux_polynomial", "taylor_polynomial"]


def _degree_grid(dimension: int, degree: int) -> NDArray[np.int64]:
    grid: NDArray[np.int64] = np.indices((degree + 1,) * dimension).sum(axis=0)
    return grid


@dataclass(frozen=True, eq=False)
class PolynomialMap:
    """p(y) = Σ_{|α| <= degree} c_α y^α with c_α ∈ R^m.

    ``coefficients`` has shape (degree+1,)*d + (m,); entries with
    |α| > degree are zero.
    """

    __array_ufunc__ = None

    degree: int
    coefficients: NDArray[np.float64]

    def __post_init__(self) -> None:
        c = np.array(self.coefficients, dtype=float)
        if self.degree < 0:
            raise PreconditionError(f"degree must be >= 0, got {self.degree}")
        d = c.ndim - 1
        if d < 1 or c.shape[:d] != (self.degree + 1,) * d:
            raise PreconditionError(
                f"coefficient array of shape {c.shape} does not fit degree {self.degree}"
            )
        if not np.all(np.isfinite(c)):
            raise PreconditionError("polynomial coefficients must be finite")
        c[~order_mask(d, self.degree)] = 0.0
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def zero(cls, dimension: int, degree: int, target_dim: int) -> PolynomialMap:
        return cls(degree, np.zeros((degree + 1,) * dimension + (target_dim,)))

    @classmethod
    def from_terms(
        cls,
        dimension: int,
        degree: int,
        terms: Mapping[MultiIndex, ArrayLike],
        target_dim: int = 1,
    ) -> PolynomialMap:
        c = np.zeros((degree + 1,) * dimension + (target_dim,))
        for alpha, value in terms.items():
            if alpha.order > degree:
                raise PreconditionError(f"monomial {alpha} exceeds degree {degree}")
            c[alpha.entries] = np.atleast_1d(np.asarray(value, dtype=float))
        return cls(degree, c)

    @property
    def dimension(self) -> int:
        return int(self.coefficients.ndim - 1)

    @property
    def target_dim(self) -> int:
        return int(self.coefficients.shape[-1])

    def coefficient(self, alpha: MultiIndex) -> NDArray[np.float64]:
        if alpha.order > self.degree:
            return np.zeros(self.target_dim)
        return self.coefficients[alpha.entries]

    def terms(self) -> Iterator[tuple[MultiIndex, NDArray[np.float64]]]:
        """Monomials with a nonzero coefficient, in graded order."""
        for alpha in multi_indices(self.dimension, self.degree):
            value = self.coefficients[alpha.entries]
            if np.any(value != 0.0):
                yield alpha, value

    def _powers(self, y: Sequence[float]) -> list[NDArray[np.float64]]:
        exps = np.arange(self.degree + 1)
        return [float(v) ** exps for v in y]

    def __call__(self, y: Sequence[float]) -> NDArray[np.float64]:
        if len(y) != self.dimension:
            raise PreconditionError(f"point of length {len(y)} for d={self.dimension}")
        result: NDArray[np.float64] = self.coefficients
        for powers in self._powers(y):
            result = np.tensordot(powers, result, axes=([0], [0]))
        return result

    def evaluate_many(self, points: ArrayLike) -> NDArray[np.float64]:
        """Evaluate at an (N, d) array of points, returning (N, m)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        exps = np.arange(self.degree + 1)
        result = np.tensordot(pts[:, 0, None] ** exps, self.coefficients, axes=([1], [0]))
        for axis in range(1, self.dimension):
            result = np.einsum("nk,nk...->n...", pts[:, axis, None] ** exps, result)
        return result

    def derivative(self, axis: int) -> PolynomialMap:
        """∂p/∂y_axis, of degree one less (degree 0 stays 0)."""
        if self.degree == 0:
            return PolynomialMap.zero(self.dimension, 0, self.target_dim)
        c = np.moveaxis(self.coefficients, axis, 0)
        scaled = c[1:] * np.arange(1, self.degree + 1).reshape((-1,) + (1,) * (c.ndim - 1))
        scaled = np.moveaxis(scaled, 0, axis)
        window = tuple(
            slice(None) if i == axis else slice(0, self.degree) for i in range(self.dimension)
        )
        return PolynomialMap(self.degree - 1, scaled[window])

    def shifted(self, y: Sequence[float]) -> PolynomialMap:
        """The polynomial s ↦ p(y + s), by a binomial change of basis per axis."""
        k = self.degree
        c = self.coefficients
        alpha = np.arange(k + 1)
        for axis, point in enumerate(y):
            # T[β, α] = C(α, β) y^(α-β) for α >= β
            gap = alpha[None, :] - alpha[:, None]
            transfer = np.where(
                gap >= 0,
                comb(alpha[None, :], alpha[:, None]) * float(point) ** np.maximum(gap, 0),
                0.0,
            )
            c = np.moveaxis(np.tensordot(transfer, c, axes=([1], [axis])), 0, axis)
        return PolynomialMap(k, c)

    def jet(self, y: Sequence[float], order: int) -> Jet:
        """Exact jet of p at y up to ``order``."""
        d = self.dimension
        shifted = self.shifted(y).coefficients
        size = min(order, self.degree) + 1
        values = np.zeros((order + 1,) * d + (self.target_dim,))
        window = (slice(0, size),) * d
        values[window] = shifted[window]
        values *= factorial_table(d, order)[..., np.newaxis]
        return Jet(tuple(y), order, values)

    def homogeneous_part(self, j: int) -> PolynomialMap:
        mask = _degree_grid(self.dimension, self.degree) == j
        return PolynomialMap(self.degree, self.coefficients * mask[..., np.newaxis])

    def is_homogeneous(self, j: int, tol: float = 0.0) -> bool:
        off = _degree_grid(self.dimension, self.degree) != j
        return bool(np.all(np.abs(self.coefficients[off]) <= tol))

    def with_degree(self, degree: int) -> PolynomialMap:
        """Re-embed in a coefficient grid of another degree (dropping higher terms)."""
        d = self.dimension
        c = np.zeros((degree + 1,) * d + (self.target_dim,))
        size = min(degree, self.degree) + 1
        c[(slice(0, size),) * d] = self.coefficients[(slice(0, size),) * d]
        return PolynomialMap(degree, c)

    def __add__(self, other: PolynomialMap) -> PolynomialMap:
        degree = max(self.degree, other.degree)
        a = self.with_degree(degree).coefficients
        b = other.with_degree(degree).coefficients
        return PolynomialMap(degree, a + b)

    def __sub__(self, other: PolynomialMap) -> PolynomialMap:
        return self + other * -1.0

    def __mul__(self, scalar: float) -> PolynomialMap:
        return PolynomialMap(self.degree, self.coefficients * float(scalar))

    __rmul__ = __mul__

    def component(self, index: int) -> PolynomialMap:
        return PolynomialMap(self.degree, self.coefficients[..., index : index + 1])

    def to_dict(self) -> dict[str, list[float]]:
        """Nonzero coefficients keyed by ``"a1,...,ad"``."""
        return {str(alpha): [float(v) for v in value] for alpha, value in self.terms()}

    @classmethod
    def from_dict(
        cls, data: Mapping[str, Any], dimension: int, degree: int, target_dim: int
    ) -> PolynomialMap:
        terms = {MultiIndex.parse(key): value for key, value in data.items()}
        return cls.from_terms(dimension, degree, terms, target_dim)


def taylor_polynomial(jet: Jet, degree: int) -> PolynomialMap:
    """P^ℓ_x(γ): the degree-ℓ Taylor polynomial with c_α = ∂^α γ(x) / α!.

    Args:
        jet: Jet of γ at x, of order at least ``degree``.
        degree: Taylor degree ℓ.

    Raises:
        PreconditionError: If the jet order is below ``degree``.
    """
    if jet.order < degree:
        raise PreconditionError(f"jet of order {jet.order} cannot give degree {degree}")
    return PolynomialMap(degree, jet.truncate(degree).taylor_coefficients())


def gateaux_polynomial(jet: Jet, j: int) -> PolynomialMap:
    """δ^j_x γ: y ↦ Σ_{|α|=j} (j!/α!) ∂^α γ(x) y^α, homogeneous of degree j."""
    if jet.order < j:
        raise PreconditionError(f"jet of order {jet.order} has no differential of order {j}")
    coefficients = jet.truncate(j).taylor_coefficients() * math.factorial(j)
    return PolynomialMap(j, coefficients).homogeneous_part(j)
