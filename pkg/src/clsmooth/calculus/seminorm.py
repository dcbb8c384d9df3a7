"""Seminorms on R^m and sampled C^l seminorms of jet providers."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Literal

import numpy as np

from clsmooth.calculus.forms import form_norm
from clsmooth.calculus.multiindex import order_mask
from clsmooth.calculus.polynomial import gateaux_polynomial
from clsmooth.exceptions import PreconditionError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

    from clsmooth.calculus.jet import Jet
    from clsmooth.types import JetProvider

__all__ = [
    "SeminormKind",
    "SeminormSpec",
    "jet_profile",
    "seminorm_cl",
    "seminorm_profile",
]

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 256
DEFAULT_SEED = 20240917


class SeminormKind(str, Enum):
    COORDINATE_MAX = "coordinate-max"
    EUCLIDEAN = "euclidean"
    WEIGHTED_MAX = "weighted-max"


@dataclass(frozen=True)
class SeminormSpec:
    """A seminorm q on R^m: max |v_i|, ‖v‖_2, or max w_i |v_i| with w_i > 0."""

    kind: SeminormKind = SeminormKind.COORDINATE_MAX
    weights: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", SeminormKind(self.kind))
        if self.kind is SeminormKind.WEIGHTED_MAX:
            if not self.weights or any(w <= 0 for w in self.weights):
                raise PreconditionError("weighted-max needs positive weights")
        elif self.weights:
            raise PreconditionError(f"{self.kind.value} takes no weights")

    @classmethod
    def parse(cls, text: str) -> SeminormSpec:
        """``coordinate-max``, ``euclidean`` or ``weighted-max:w1,w2,...``."""
        name, _, rest = text.strip().partition(":")
        try:
            kind = SeminormKind(name)
        except ValueError as e:
            raise PreconditionError(f"unknown seminorm {name!r}") from e
        weights: tuple[float, ...] = ()
        if rest:
            try:
                weights = tuple(float(w) for w in rest.split(","))
            except ValueError as e:
                raise PreconditionError(f"invalid seminorm weights {rest!r}") from e
        return cls(kind, weights)

    def __str__(self) -> str:
        if self.kind is SeminormKind.WEIGHTED_MAX:
            return f"{self.kind.value}:{','.join(repr(w) for w in self.weights)}"
        return self.kind.value

    def apply(self, values: ArrayLike) -> NDArray[np.float64]:
        """q applied along the last axis."""
        v = np.asarray(values, dtype=float)
        if self.kind is SeminormKind.EUCLIDEAN:
            return np.linalg.norm(v, axis=-1)
        if self.kind is SeminormKind.WEIGHTED_MAX:
            if v.shape[-1] != len(self.weights):
                raise PreconditionError(
                    f"{len(self.weights)} weights for vectors of length {v.shape[-1]}"
                )
            return np.max(np.abs(v) * np.asarray(self.weights), axis=-1)
        return np.max(np.abs(v), axis=-1)

    def __call__(self, vector: ArrayLike) -> float:
        return float(self.apply(vector))


def jet_profile(jet: Jet, order: int, q: SeminormSpec) -> NDArray[np.float64]:
    """max_{|α| = j} q(∂^α γ(x)) for j = 0..order at one point."""
    if jet.order < order:
        raise PreconditionError(f"jet of order {jet.order} below requested {order}")
    d = jet.dimension
    norms = q.apply(jet.truncate(order).values)
    degrees = np.indices((order + 1,) * d).sum(axis=0)
    mask = order_mask(d, order)
    return np.array([float(np.max(norms[mask & (degrees == j)])) for j in range(order + 1)])


def _gateaux_profile(
    jet: Jet, order: int, q: SeminormSpec, samples: int, seed: int
) -> NDArray[np.float64]:
    out = np.zeros(order + 1)
    out[0] = q(jet.value)
    for j in range(1, order + 1):
        out[j] = form_norm(gateaux_polynomial(jet, j), q, samples=samples, seed=seed)
    return out


def seminorm_profile(
    provider: JetProvider,
    points: Sequence[Sequence[float]],
    order: int,
    q: SeminormSpec,
    *,
    kind: Literal["partial", "gateaux"] = "partial",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> NDArray[np.float64]:
    """Sampled ‖γ‖_{C^j,K,q} for j = 0..order over the grid ``points``.

    ``partial`` takes max_{|α| <= j} q(∂^α γ(x)); ``gateaux`` takes the
    sampled ball norm of the j-th Gâteaux differential instead. Both are
    lower estimates of the true supremum over K.
    """
    if kind not in ("partial", "gateaux"):
        raise PreconditionError(f"unknown seminorm kind {kind!r}")
    best = np.zeros(order + 1)
    for x in points:
        jet = provider.jet(x, order)
        if kind == "partial":
            profile = jet_profile(jet, order, q)
        else:
            profile = _gateaux_profile(jet, order, q, samples, seed)
        best = np.maximum(best, profile)
    return np.maximum.accumulate(best)


def seminorm_cl(
    provider: JetProvider,
    points: Sequence[Sequence[float]],
    order: int,
    q: SeminormSpec,
    *,
    kind: Literal["partial", "gateaux"] = "partial",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> float:
    """Sampled ‖γ‖_{C^ℓ,K,q}: max over grid points and |α| <= ℓ of q(∂^α γ(x)).

    Args:
        provider: Source of jets of order ``order``.
        points: Grid over the compact set K.
        order: ℓ.
        q: Seminorm on the target space.
        kind: ``partial`` (partial derivatives) or ``gateaux`` (ball norms
            of the Gâteaux differentials).
        samples: Direction samples per differential for ``gateaux``.
        seed: Sampling seed for ``gateaux``.

    Returns:
        A lower estimate of the seminorm that converges under grid refinement.
    """
    profile = seminorm_profile(
        provider, points, order, q, kind=kind, samples=samples, seed=seed
    )
    logger.debug("seminorm over %d points, order %d: %r", len(points), order, profile[-1])
    return float(profile[-1])
