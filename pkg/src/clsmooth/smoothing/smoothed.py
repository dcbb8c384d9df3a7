"""SmoothedFunction: the closed form Σ h_{n,z}(x) · p_z(x - z/n) of a smoothing."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Any

import numpy as np

from clsmooth.calculus.jet import Jet
from clsmooth.calculus.multiindex import MAX_ORDER, check_order, factorial_table
from clsmooth.calculus.polynomial import PolynomialMap
from clsmooth.calculus.series import MultiSeries
from clsmooth.exceptions import GeometryError, PreconditionError, ReportError
from clsmooth.partition.lattice import PeriodicPartition

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from numpy.typing import NDArray

    from clsmooth.geometry.boxes import BoxUnion

__all__ = [
    "SmoothedFunction",
    "SmoothingTerm",
    "TensorWitness",
    "evaluate_jet",
    "load_smoothed",
    "save_smoothed",
    "tensor_witness",
]

logger = logging.getLogger(__name__)

_RANK_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SmoothingTerm:
    """One bump term h_{n,z}(x) · polynomial(x - z/n)."""

    z: tuple[int, ...]
    n: int
    polynomial: PolynomialMap

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", tuple(int(v) for v in self.z))
        if self.n < 1:
            raise PreconditionError(f"term scale must be >= 1, got {self.n}")
        if len(self.z) != self.polynomial.dimension:
            raise PreconditionError("term lattice point and polynomial dimensions differ")

    @property
    def center(self) -> tuple[float, ...]:
        return tuple(v / self.n for v in self.z)

    def cube(self) -> tuple[list[Fraction], list[Fraction]]:
        """Exact closed cube z/n + [-1/n, 1/n]^d containing the support."""
        return (
            [Fraction(v - 1, self.n) for v in self.z],
            [Fraction(v + 1, self.n) for v in self.z],
        )


@dataclass(frozen=True)
class SmoothedFunction:
    """S(x) = Σ_terms h_{n,z}(x) · p_z(x - z/n), terms ordered by (n, z).

    ``domain``, when set, restricts evaluation (cube smoothing); the
    closed form itself is defined on all of R^d.
    """

    terms: tuple[SmoothingTerm, ...]
    order: int
    dimension: int
    target_dim: int
    domain: BoxUnion | None = None
    _index: dict[int, dict[tuple[int, ...], SmoothingTerm]] = field(
        init=False, repr=False, compare=False
    )
    _partition: PeriodicPartition = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index: dict[int, dict[tuple[int, ...], SmoothingTerm]] = {}
        for term in self.terms:
            if term.polynomial.dimension != self.dimension:
                raise PreconditionError("term dimension does not match the function")
            if term.polynomial.target_dim != self.target_dim:
                raise PreconditionError("term target dimension does not match the function")
            bucket = index.setdefault(term.n, {})
            if term.z in bucket:
                raise PreconditionError(f"duplicate term at n={term.n}, z={term.z}")
            bucket[term.z] = term
        ordered = tuple(sorted(self.terms, key=lambda t: (t.n, t.z)))
        object.__setattr__(self, "terms", ordered)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_partition", PeriodicPartition(self.dimension))

    @classmethod
    def empty(cls, dimension: int, order: int, target_dim: int) -> SmoothedFunction:
        return cls((), order, dimension, target_dim)

    @property
    def scales(self) -> list[int]:
        return sorted(self._index)

    def __len__(self) -> int:
        return len(self.terms)

    def _check_point(self, x: Sequence[float]) -> tuple[float, ...]:
        point = tuple(float(v) for v in x)
        if len(point) != self.dimension:
            raise PreconditionError(f"point of length {len(point)} for d={self.dimension}")
        if self.domain is not None and not self.domain.contains(point):
            raise GeometryError(f"{point} lies outside the evaluation domain")
        return point

    def _active(self, point: Sequence[float]) -> list[SmoothingTerm]:
        found = []
        for n, bucket in self._index.items():
            for z in self._partition.scaled_active(n, point):
                term = bucket.get(z)
                if term is not None:
                    found.append(term)
        return found

    def value(self, x: Sequence[float]) -> NDArray[np.float64]:
        point = self._check_point(x)
        total = np.zeros(self.target_dim)
        for term in self._active(point):
            weight = self._partition.scaled_value(term.n, term.z, point)
            if weight != 0.0:
                offset = [p - c for p, c in zip(point, term.center, strict=True)]
                total += weight * term.polynomial(offset)
        return total

    def jet(self, x: Sequence[float], order: int) -> Jet:
        """Exact jet by the Leibniz rule on h_{n,z} and the shifted polynomial."""
        check_order(order, MAX_ORDER)
        point = self._check_point(x)
        d = self.dimension
        total = np.zeros((order + 1,) * d + (self.target_dim,))
        for term in self._active(point):
            h = self._partition.scaled_series(term.n, term.z, point, order)
            if not np.any(h.coefficients):
                continue
            offset = [p - c for p, c in zip(point, term.center, strict=True)]
            poly = term.polynomial.jet(offset, order)
            for i in range(self.target_dim):
                total[..., i] += (h * poly.component(i)).coefficients
        total *= factorial_table(d, order)[..., np.newaxis]
        return Jet(point, order, total)

    def scaled(self, factor: float) -> SmoothedFunction:
        terms = tuple(SmoothingTerm(t.z, t.n, t.polynomial * factor) for t in self.terms)
        return SmoothedFunction(terms, self.order, self.dimension, self.target_dim, self.domain)

    def combine(self, other: SmoothedFunction, a: float = 1.0, b: float = 1.0) -> SmoothedFunction:
        """a·self + b·other, termwise; terms sharing (n, z) add their polynomials."""
        if (other.dimension, other.target_dim) != (self.dimension, self.target_dim):
            raise PreconditionError("cannot combine smoothed functions of different shape")
        merged: dict[tuple[int, tuple[int, ...]], PolynomialMap] = {}
        for factor, source in ((a, self), (b, other)):
            for t in source.terms:
                key = (t.n, t.z)
                poly = t.polynomial * factor
                merged[key] = merged[key] + poly if key in merged else poly
        terms = tuple(SmoothingTerm(z, n, p) for (n, z), p in merged.items())
        order = min(self.order, other.order)
        return SmoothedFunction(terms, order, self.dimension, self.target_dim, self.domain)

    def restricted(self, domain: BoxUnion | None) -> SmoothedFunction:
        return SmoothedFunction(self.terms, self.order, self.dimension, self.target_dim, domain)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ell": self.order,
            "m": self.target_dim,
            "d": self.dimension,
            "terms": [
                {"z": list(t.z), "n": t.n, "coeffs": t.polynomial.to_dict()} for t in self.terms
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SmoothedFunction:
        try:
            order, m, d = int(data["ell"]), int(data["m"]), int(data["d"])
            terms = tuple(
                SmoothingTerm(
                    tuple(entry["z"]),
                    int(entry["n"]),
                    PolynomialMap.from_dict(entry["coeffs"], d, order, m),
                )
                for entry in data["terms"]
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ReportError(f"malformed smoothed-function data: {e}") from e
        return cls(terms, order, d, m)


def evaluate_jet(smoothed: SmoothedFunction, x: Sequence[float], order: int) -> Jet:
    """Exact derivatives of the closed form; the zero jet off every term cube."""
    return smoothed.jet(x, order)


def save_smoothed(smoothed: SmoothedFunction, path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(smoothed.to_dict(), indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        logger.error("Failed to write %s: %s", path, e)
        raise ReportError(f"Failed to write {path}: {e}") from e
    logger.info("Wrote %d terms to %s", len(smoothed), path)


def load_smoothed(path: Path) -> SmoothedFunction:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        logger.error("Failed to read %s: %s", path, e)
        raise ReportError(f"Failed to read {path}: {e}") from e
    return SmoothedFunction.from_dict(data)


@dataclass(frozen=True)
class TensorWitness:
    """S = Σ_i v_i ⊗ φ_i with vectors v_i ∈ R^m and scalar smoothed φ_i."""

    rank: int
    vectors: NDArray[np.float64]
    scalars: tuple[SmoothedFunction, ...]

    def value(self, x: Sequence[float]) -> NDArray[np.float64]:
        total = np.zeros(self.vectors.shape[1])
        for v, phi in zip(self.vectors, self.scalars, strict=True):
            total += v * float(phi.value(x)[0])
        return total


def tensor_witness(smoothed: SmoothedFunction) -> TensorWitness:
    """Rank factorization of the stacked term coefficients (SVD with relative cutoff).

    The rank never exceeds m, since the coefficient matrix has m rows.
    """
    m = smoothed.target_dim
    if not smoothed.terms:
        return TensorWitness(0, np.zeros((0, m)), ())
    blocks = [t.polynomial.coefficients.reshape(-1, m) for t in smoothed.terms]
    sizes = [b.shape[0] for b in blocks]
    matrix = np.concatenate(blocks, axis=0).T
    u, sigma, vt = np.linalg.svd(matrix, full_matrices=False)
    cutoff = _RANK_TOLERANCE * (float(sigma[0]) if sigma.size else 0.0)
    rank = int(np.sum(sigma > cutoff)) if sigma.size and sigma[0] > 0 else 0
    vectors = (u[:, :rank] * sigma[:rank]).T
    scalars = []
    for i in range(rank):
        row = vt[i]
        terms = []
        start = 0
        for term, size in zip(smoothed.terms, sizes, strict=True):
            shape = term.polynomial.coefficients.shape[:-1] + (1,)
            poly = PolynomialMap(term.polynomial.degree, row[start : start + size].reshape(shape))
            terms.append(SmoothingTerm(term.z, term.n, poly))
            start += size
        scalars.append(
            SmoothedFunction(tuple(terms), smoothed.order, smoothed.dimension, 1, smoothed.domain)
        )
    logger.debug("tensor witness rank %d for m=%d", rank, m)
    return TensorWitness(rank, vectors, tuple(scalars))
