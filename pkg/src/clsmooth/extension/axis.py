"""One-axis reflection extension: weights, nodes and the smooth cutoff χ.

Across a face at t = 0 the extension is E(γ)(t) = χ(-t) Σ_k a_k γ(-b_k t)
for t < 0. Matching derivatives of order 0..ℓ at the face means
Σ_k a_k (-b_k)^i = 1 for i = 0..ℓ, a Vandermonde system in the nodes.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import linalg

from clsmooth.calculus.multiindex import MAX_ORDER
from clsmooth.calculus.series import TaylorSeries
from clsmooth.exceptions import ExtensionError
from clsmooth.partition.bump import SmoothStep

__all__ = ["AxisExtension", "default_nodes", "solve_axis_weights", "vandermonde"]

logger = logging.getLogger(__name__)

_MAX_CONDITION = 1e12
_RESIDUAL_TOLERANCE = 1e-9


def default_nodes(order: int) -> tuple[float, ...]:
    """b_k = k + 1."""
    return tuple(float(k + 1) for k in range(order + 1))


def vandermonde(nodes: tuple[float, ...]) -> np.ndarray:
    """V[i, k] = (-b_k)^i."""
    b = -np.asarray(nodes, dtype=float)
    return b[np.newaxis, :] ** np.arange(len(nodes))[:, np.newaxis]


def solve_axis_weights(order: int, nodes: tuple[float, ...] | None = None) -> np.ndarray:
    """Weights a with Σ_k a_k (-b_k)^i = 1 for i = 0..ℓ.

    Solved by LU factorization with partial pivoting.

    Raises:
        ExtensionError: If the nodes are not ℓ+1 distinct positive reals,
            or the system is near-singular.
    """
    if not 0 <= order <= MAX_ORDER:
        raise ExtensionError(f"extension order must be in [0, {MAX_ORDER}], got {order}")
    nodes = default_nodes(order) if nodes is None else tuple(float(b) for b in nodes)
    if len(nodes) != order + 1:
        raise ExtensionError(f"order {order} needs {order + 1} nodes, got {len(nodes)}")
    if any(not np.isfinite(b) or b <= 0.0 for b in nodes):
        raise ExtensionError(f"nodes must be positive and finite: {nodes}")
    if len(set(nodes)) != len(nodes):
        raise ExtensionError(f"nodes must be distinct: {nodes}")
    matrix = vandermonde(nodes)
    condition = float(np.linalg.cond(matrix))
    if not np.isfinite(condition) or condition > _MAX_CONDITION:
        raise ExtensionError(f"near-singular node system (condition {condition:.3g}): {nodes}")
    rhs = np.ones(order + 1)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", linalg.LinAlgWarning)
            weights = linalg.lu_solve(linalg.lu_factor(matrix), rhs)
    except (np.linalg.LinAlgError, linalg.LinAlgError, linalg.LinAlgWarning) as e:
        raise ExtensionError(f"cannot solve for extension weights: {e}") from e
    residual = float(np.max(np.abs(matrix @ weights - rhs)))
    if residual > _RESIDUAL_TOLERANCE:
        raise ExtensionError(f"extension weights residual {residual:.3g} too large")
    logger.debug("axis weights order=%d nodes=%s: %s", order, nodes, weights)
    return np.asarray(weights, dtype=float)


@dataclass(frozen=True, eq=False)
class AxisExtension:
    """Nodes b_k, weights a_k and cutoff χ for one reflected face.

    χ ≡ 1 on [0, 1/(4 b_max)] and χ ≡ 0 on [1/(2 b_max), ∞), so every
    reflected argument b_k t with χ(t) ≠ 0 stays within distance 1/2 of
    the face (in units of the source length).
    """

    order: int
    nodes: tuple[float, ...]
    weights: np.ndarray

    @classmethod
    def build(cls, order: int, nodes: tuple[float, ...] | None = None) -> AxisExtension:
        nodes = default_nodes(order) if not nodes else tuple(float(b) for b in nodes)
        return cls(order, nodes, solve_axis_weights(order, nodes))

    def perturbed(self, index: int, delta: float) -> AxisExtension:
        """A copy with weight ``index`` shifted by ``delta`` (fault injection)."""
        weights = np.array(self.weights, dtype=float)
        weights[index] += delta
        return AxisExtension(self.order, self.nodes, weights)

    @property
    def collar_end(self) -> float:
        return 1.0 / (4.0 * max(self.nodes))

    @property
    def cutoff_end(self) -> float:
        return 1.0 / (2.0 * max(self.nodes))

    def cutoff(self, t: float) -> float:
        """χ(t) for a distance t >= 0 beyond the face."""
        return self.cutoff_series(t, 0).value

    def cutoff_series(self, t: float, order: int) -> TaylorSeries:
        """Taylor series of χ at t in the variable t."""
        if t <= self.collar_end:
            return TaylorSeries.constant(1.0, order)
        if t >= self.cutoff_end:
            return TaylorSeries.constant(0.0, order)
        width = self.cutoff_end - self.collar_end
        step = SmoothStep().series((self.cutoff_end - t) / width, order)
        return TaylorSeries(step.coefficients * (-1.0 / width) ** np.arange(order + 1))

    def residuals(self) -> np.ndarray:
        return np.abs(vandermonde(self.nodes) @ self.weights - 1.0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "nodes": list(self.nodes),
            "weights": [float(a) for a in self.weights],
            "collar_end": self.collar_end,
            "cutoff_end": self.cutoff_end,
        }
