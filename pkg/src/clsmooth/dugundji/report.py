"""Grid report for the metric extension: restriction, hull, sup ratio, continuity."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from clsmooth.calculus.jet import Jet
from clsmooth.dugundji.shells import DugundjiExtension
from clsmooth.exceptions import PreconditionError
from clsmooth.tables import Table, format_point

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from clsmooth.dugundji.shells import ShellStructure
    from clsmooth.geometry.boxes import Box
    from clsmooth.types import JetProvider

__all__ = [
    "ContinuityStep",
    "DugundjiReport",
    "DugundjiRow",
    "OffsetOutsideBall",
    "dugundji_report",
    "locality_gap",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DugundjiRow:
    query: tuple[float, ...]
    distance: float
    shell: int | None  # None on Y
    value: tuple[float, ...]
    hull_ok: bool


@dataclass(frozen=True)
class ContinuityStep:
    """One point x_k on a path approaching Y."""

    step: int
    distance: float
    error: float  # max_i |E(γ)(x_k)_i - γ(y)_i|


@dataclass(frozen=True)
class DugundjiReport:
    rows: tuple[DugundjiRow, ...]
    restriction_error: float
    sup_ratio: float
    hull_ok: bool
    weight_sum_error: float
    min_weight: float
    anchors_checked: int
    anchor_violations: int
    continuity: tuple[ContinuityStep, ...]
    target: tuple[float, ...]  # γ(y) at the end of the continuity path

    @property
    def continuity_trend_ok(self) -> bool:
        """The path error ends no larger than it starts."""
        if len(self.continuity) < 2:
            return True
        return self.continuity[-1].error <= self.continuity[0].error

    def passed(self, *, restriction: float, weight_sum: float, sup_ratio: float) -> bool:
        return (
            self.restriction_error <= restriction
            and self.weight_sum_error <= weight_sum
            and self.min_weight >= 0.0
            and self.sup_ratio <= 1.0 + sup_ratio
            and self.hull_ok
            and self.anchor_violations == 0
        )

    def table(self) -> Table:
        """Value table with columns query, d_Y, shell, value1..m, hull_ok."""
        m = len(self.rows[0].value) if self.rows else 0
        header = ("query", "d_Y", "shell", *(f"value{i + 1}" for i in range(m)), "hull_ok")
        out = Table(header)
        for row in self.rows:
            out.add(format_point(row.query), row.distance, row.shell, *row.value, row.hull_ok)
        return out

    def continuity_table(self) -> Table:
        out = Table(("step", "d_Y", "error"))
        for s in self.continuity:
            out.add(s.step, s.distance, s.error)
        return out


def _grid(window: Box, per_axis: int) -> list[tuple[float, ...]]:
    if not window.is_bounded:
        raise PreconditionError("the report window must be bounded")
    if per_axis < 2:
        raise PreconditionError(f"grid needs at least 2 points per axis, got {per_axis}")
    axes = [
        np.linspace(lo, hi, per_axis)
        for lo, hi in zip(window.lower, window.upper, strict=True)
    ]
    return [tuple(float(v) for v in p) for p in itertools.product(*axes)]


def _continuity_path(
    extension: DugundjiExtension,
    off_y: Sequence[tuple[float, ...]],
    steps: int,
    seed: int,
) -> tuple[tuple[ContinuityStep, ...], tuple[float, ...]]:
    if not off_y or steps < 1:
        return (), ()
    rng = np.random.default_rng(seed)
    start = np.asarray(off_y[int(rng.integers(len(off_y)))], dtype=float)
    closed = extension.shells.closed
    y, _ = closed.nearest(start)
    target = extension.source.jet(tuple(y), 0).value
    out = []
    for k in range(1, steps + 1):
        x = tuple(float(v) for v in y + 2.0 ** (-k) * (start - y))
        value = extension.value(x)
        out.append(ContinuityStep(k, closed.distance(x), float(np.max(np.abs(value - target)))))
    return tuple(out), tuple(float(v) for v in target)


def dugundji_report(
    source: JetProvider,
    shells: ShellStructure,
    window: Box,
    grid: int,
    *,
    y_samples: int = 9,
    hull_tolerance: float = 1e-12,
    path_steps: int = 12,
    seed: int = 20240917,
) -> DugundjiReport:
    """Evaluate ℰ(γ) on a grid over ``window`` and collect every check.

    Hull bounds and the sup-norm denominator are taken over γ on a grid of
    Y (``y_samples`` per axis) together with every resolved anchor y(j),
    which are the values actually blended.
    """
    extension = DugundjiExtension(source, shells)
    closed = shells.closed
    points = _grid(window, grid)

    evaluated: list[tuple[tuple[float, ...], float, int | None, NDArray[np.float64]]] = []
    restriction = 0.0
    weight_sum_error = 0.0
    min_weight = 1.0
    off_y = []
    for x in points:
        distance = closed.distance(x)
        if distance == 0.0:
            value = extension.value(x)
            restriction = max(
                restriction, float(np.max(np.abs(value - source.jet(x, 0).value)))
            )
            evaluated.append((x, 0.0, None, value))
            continue
        blend = shells.blend(x)
        weights = [w for _, w in blend]
        weight_sum_error = max(weight_sum_error, abs(sum(weights) - 1.0))
        min_weight = min(min_weight, *weights)
        value = np.zeros(source.target_dim)
        for anchor, w in blend:
            value += w * source.jet(anchor.nearest, 0).value
        evaluated.append((x, distance, shells.shell_index(x), value))
        off_y.append(x)

    continuity, target = _continuity_path(extension, off_y, path_steps, seed)

    reference_points = [*closed.sample(y_samples), *(a.nearest for a in shells.anchors())]
    reference = np.array([source.jet(p, 0).value for p in reference_points])
    lo = reference.min(axis=0) - hull_tolerance
    hi = reference.max(axis=0) + hull_tolerance
    denominator = float(np.max(np.abs(reference)))

    rows = []
    sup = 0.0
    for x, distance, shell, value in evaluated:
        inside = bool(np.all(value >= lo) and np.all(value <= hi))
        sup = max(sup, float(np.max(np.abs(value))))
        rows.append(DugundjiRow(x, distance, shell, tuple(float(v) for v in value), inside))
    if denominator > 0.0:
        ratio = sup / denominator
    else:
        ratio = 0.0 if sup == 0.0 else float("inf")

    anchors = shells.anchors()
    violations = sum(1 for a in anchors if not a.ok)
    report = DugundjiReport(
        rows=tuple(rows),
        restriction_error=restriction,
        sup_ratio=ratio,
        hull_ok=all(r.hull_ok for r in rows),
        weight_sum_error=weight_sum_error,
        min_weight=min_weight,
        anchors_checked=len(anchors),
        anchor_violations=violations,
        continuity=continuity,
        target=target,
    )
    logger.info(
        "dugundji report: %d points, %d anchors, sup ratio %r", len(rows), len(anchors), ratio
    )
    return report


@dataclass(frozen=True)
class OffsetOutsideBall:
    """γ + offset outside the open ball B(center, radius); γ inside it."""

    source: JetProvider
    center: tuple[float, ...]
    radius: float
    offset: float

    @property
    def dimension(self) -> int:
        return self.source.dimension

    @property
    def target_dim(self) -> int:
        return self.source.target_dim

    def jet(self, x: Sequence[float], order: int) -> Jet:
        jet = self.source.jet(x, order)
        if float(np.linalg.norm(np.subtract(x, self.center))) < self.radius:
            return jet
        values = np.array(jet.values)
        values[(0,) * self.dimension] += self.offset
        return Jet(jet.basepoint, jet.order, values)


def locality_gap(
    source: JetProvider, shells: ShellStructure, x: Sequence[float], offset: float = 1.0
) -> float:
    """max |ℰ(γ)(x) - ℰ(γ')(x)| where γ' differs from γ only outside B(x, 2^{-n+3})."""
    point = tuple(float(v) for v in x)
    n = shells.shell_index(point)
    perturbed = OffsetOutsideBall(source, point, 2.0 ** (-n + 3), offset)
    a = DugundjiExtension(source, shells).value(point)
    b = DugundjiExtension(perturbed, shells).value(point)
    return float(np.max(np.abs(a - b)))
