"""‖h_0‖_{C^ℓ} and the smoothing-operator constant C derived from it."""

from __future__ import annotations

import itertools
import logging
import math
import threading
from dataclasses import dataclass

import numpy as np

from clsmooth.calculus.forms import form_norm
from clsmooth.calculus.jet import Jet
from clsmooth.calculus.polynomial import gateaux_polynomial
from clsmooth.calculus.seminorm import SeminormSpec
from clsmooth.calculus.series import MultiSeries
from clsmooth.exceptions import PreconditionError
from clsmooth.partition.bump import BUMP_DEFINITION
from clsmooth.partition.lattice import axis_partition_series

__all__ = ["H0Norm", "h0_norm", "smoothing_constant"]

logger = logging.getLogger(__name__)

_MAX_GRID_POINTS = 20_000
_DIRECTION_SAMPLES = 64

_cache: dict[tuple[int, int, int, float, int], H0Norm] = {}
_cache_lock = threading.Lock()


@dataclass(frozen=True)
class H0Norm:
    """A computed ‖h_0‖_{C^ℓ} together with how it was obtained."""

    value: float
    dimension: int
    order: int
    seed: int
    grid: str
    definition: str = BUMP_DEFINITION


def _axis_grid(count: int, step: float, rng: np.random.Generator) -> np.ndarray:
    """Points of [0, 1) spaced by ``step``, shifted by a seeded offset in [0, step)."""
    offset = rng.uniform(0.0, step)
    return offset + step * np.arange(count)


def _compute(dimension: int, order: int, seed: int, step: float, per_axis: int) -> H0Norm:
    rng = np.random.default_rng(seed)
    q = SeminormSpec()
    best = 0.0
    # h_0 is even in each coordinate and symmetric under permutations,
    # so a grid over [0, 1)^d with non-decreasing coordinates suffices.
    if dimension == 1:
        count = int(math.ceil(1.0 / step))
        for t in _axis_grid(count, step, rng):
            if t >= 1.0:
                continue
            derivs = axis_partition_series(0, float(t), order).derivatives()
            best = max(best, float(np.max(np.abs(derivs))))
        grid = f"step={step!r} on [0,1)"
    else:
        per_axis = min(per_axis, max(3, int(_MAX_GRID_POINTS ** (1.0 / dimension))))
        axis = _axis_grid(per_axis, 1.0 / per_axis, rng)
        axis = axis[axis < 1.0]
        for x in itertools.combinations_with_replacement(axis.tolist(), dimension):
            series = MultiSeries.product_of([axis_partition_series(0, v, order) for v in x])
            jet = Jet.from_series(x, [series])
            best = max(best, abs(float(jet.value[0])))
            for j in range(1, order + 1):
                norm = form_norm(
                    gateaux_polynomial(jet, j), q, samples=_DIRECTION_SAMPLES, seed=seed
                )
                best = max(best, norm)
        grid = f"{per_axis} points per axis on [0,1)^{dimension}"
    logger.info("h0 norm d=%d order=%d seed=%d: %r", dimension, order, seed, best)
    return H0Norm(best, dimension, order, seed, grid)


def h0_norm(
    dimension: int,
    order: int,
    *,
    seed: int = 20240917,
    grid_step: float = 1e-3,
    points_per_axis: int = 81,
) -> H0Norm:
    """Sampled ‖h_0‖_{C^ℓ} = max_{j <= ℓ} sup_x ‖δ^j_x h_0‖ over the max-norm ball.

    Computed once per (dimension, order, seed, grid) and cached; the cache
    is insert-once so concurrent callers observe a single value.
    """
    if dimension < 1 or order < 0:
        raise PreconditionError(f"invalid dimension/order {dimension}/{order}")
    key = (dimension, order, seed, grid_step, points_per_axis)
    with _cache_lock:
        cached = _cache.get(key)
    if cached is not None:
        return cached
    computed = _compute(dimension, order, seed, grid_step, points_per_axis)
    with _cache_lock:
        return _cache.setdefault(key, computed)


def smoothing_constant(dimension: int, order: int, h0: float) -> float:
    """C = 1 + (ℓ+1) 2^{d+1} (2ℓ)^ℓ ‖h_0‖_{C^ℓ}."""
    return 1.0 + (order + 1) * 2.0 ** (dimension + 1) * float((2 * order) ** order) * h0
