"""Harness runner: convergence tables, the operator-bound certificate and rate fits."""

from __future__ import annotations

import itertools
import logging
import math
import time
from fractions import Fraction
from typing import TYPE_CHECKING, Literal

import numpy as np

from clsmooth.bench.types import (
    BoundCertificate,
    BoundRow,
    ConvergenceRow,
    ConvergenceTable,
    GrowthRow,
    RateFit,
    UniformFamilyReport,
    UniformRow,
)
from clsmooth.calculus.seminorm import SeminormSpec, seminorm_cl, seminorm_profile
from clsmooth.exceptions import GeometryError, PreconditionError
from clsmooth.geometry.boxes import BoxUnion
from clsmooth.partition.norm import h0_norm, smoothing_constant
from clsmooth.smoothing.operators import build_sn, build_stilde
from clsmooth.smoothing.provider import ExpressionProvider, difference

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from clsmooth.geometry.boxes import Box
    from clsmooth.geometry.exhaustion import Exhaustion
    from clsmooth.smoothing.smoothed import SmoothedFunction
    from clsmooth.types import JetProvider

__all__ = [
    "bound_certificate",
    "box_grid",
    "convergence_report",
    "growth_table",
    "rate_fit",
    "uniform_family_report",
]

logger = logging.getLogger(__name__)

SeminormKind = Literal["partial", "gateaux"]


def box_grid(box: Box, per_axis: int) -> list[tuple[float, ...]]:
    """Tensor grid with ``per_axis`` points per axis over a bounded box."""
    if not box.is_bounded:
        raise GeometryError("cannot grid an unbounded box")
    if per_axis < 2:
        raise PreconditionError(f"grid needs at least 2 points per axis, got {per_axis}")
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in zip(box.lower, box.upper, strict=True)]
    return [tuple(float(v) for v in p) for p in itertools.product(*axes)]


def _closed(box: Box) -> BoxUnion:
    return BoxUnion((box,), open=False)


def _non_monotone(rows: Sequence[ConvergenceRow]) -> tuple[int, ...]:
    return tuple(
        i for i in range(1, len(rows)) if not rows[i].errors[-1] < rows[i - 1].errors[-1]
    )


def convergence_report(
    provider: JetProvider,
    omega: BoxUnion,
    order: int,
    compact: Box,
    scales: Sequence[int],
    q: SeminormSpec | None = None,
    *,
    operator: Literal["stilde", "stages"] = "stilde",
    exhaustion: Exhaustion | None = None,
    grid_points: int = 11,
    name: str = "",
) -> ConvergenceTable:
    """‖γ - Sγ‖_{C^j,K,q}, j = 0..ℓ, for each scale (``stilde``) or stage (``stages``).

    Args:
        provider: γ.
        omega: Open domain Ω.
        order: ℓ.
        compact: K, gridded with ``grid_points`` per axis.
        scales: Lattice scales n for ``stilde``; stage indices j for ``stages``.
        q: Seminorm on the target space (coordinate max by default).
        operator: Which smoothing to tabulate.
        exhaustion: Required for ``stages``; K must lie in every K_j used.
        grid_points: Grid points per axis over K.
        name: Label for the table.

    Raises:
        GeometryError: If K plus the lattice margin leaves Ω, or K is not
            inside a stage compact.
    """
    q = q or SeminormSpec()
    if not scales:
        raise PreconditionError("at least one scale is required")
    points = box_grid(compact, grid_points)
    window = _closed(compact)
    if operator == "stages" and exhaustion is None:
        raise PreconditionError("the stage table needs an exhaustion")
    rows = []
    for n in scales:
        start = time.perf_counter()
        smoothed: SmoothedFunction
        if operator == "stilde":
            smoothed = build_stilde(provider, order, n, window, omega)
        elif operator == "stages":
            assert exhaustion is not None
            if not exhaustion.compact(n).contains_box(compact.lower, compact.upper):
                raise GeometryError(f"K is not inside the stage compact K_{n}")
            smoothed = build_sn(provider, order, exhaustion, n)
        else:
            raise PreconditionError(f"unknown operator {operator!r}")
        profile = seminorm_profile(difference(provider, smoothed), points, order, q)
        rows.append(
            ConvergenceRow(n, tuple(float(e) for e in profile), time.perf_counter() - start)
        )
        logger.debug("%s %s n=%d: %s", name or "γ", operator, n, profile)
    flagged = _non_monotone(rows)
    if flagged:
        logger.warning(
            "%s: C^%d error does not decrease at %s",
            name or "γ",
            order,
            [rows[i].n for i in flagged],
        )
    return ConvergenceTable(
        function=name,
        operator=operator,
        order=order,
        compact=tuple(zip(compact.lower, compact.upper, strict=True)),
        rows=tuple(rows),
        non_monotone=flagged,
    )


def growth_table(
    dimension: int,
    orders: Iterable[int] = range(4),
    *,
    seed: int = 20240917,
    grid_step: float = 1e-3,
    points_per_axis: int = 81,
) -> tuple[GrowthRow, ...]:
    """C(ℓ) = 1 + (ℓ+1) 2^{d+1} (2ℓ)^ℓ ‖h_0‖_{C^ℓ} for each ℓ."""
    rows = []
    for ell in orders:
        h0 = h0_norm(
            dimension, ell, seed=seed, grid_step=grid_step, points_per_axis=points_per_axis
        ).value
        factor = (ell + 1) * 2.0 ** (dimension + 1) * float((2 * ell) ** ell)
        rows.append(GrowthRow(ell, h0, factor, smoothing_constant(dimension, ell, h0)))
    return tuple(rows)


def _check_margin(compact: Box, outer: Box, n: int) -> None:
    pad = Fraction(1, n)
    lower = [Fraction(v) - pad for v in compact.lower]
    upper = [Fraction(v) + pad for v in compact.upper]
    if not _closed(outer).contains_box(lower, upper):
        raise GeometryError(f"K + [-1/{n}, 1/{n}]^d is not inside L")


def bound_certificate(
    corpus: Sequence[tuple[str, JetProvider]],
    omega: BoxUnion,
    order: int,
    compact: Box,
    outer: Box,
    n: int,
    q: SeminormSpec | None = None,
    *,
    kind: SeminormKind = "gateaux",
    grid_points: int = 11,
    samples: int = 2048,
    seed: int = 20240917,
    h0_grid_step: float = 1e-3,
    h0_points_per_axis: int = 81,
    growth_orders: Iterable[int] = range(4),
) -> BoundCertificate:
    """Check the operator bound for every function.

    For each γ: ‖S̃_nγ‖_{C^ℓ,K,q} <= C‖γ‖_{C^ℓ,L,q} and
    ‖γ - S̃_nγ‖_{C^ℓ,K,q} <= (C-1)‖γ‖_{C^ℓ,L,q}.

    Raises:
        GeometryError: If K + [-1/n, 1/n]^d is not inside L.
    """
    q = q or SeminormSpec()
    if not corpus:
        raise PreconditionError("the bound certificate needs at least one function")
    dimension = corpus[0][1].dimension
    _check_margin(compact, outer, n)
    h0 = h0_norm(
        dimension, order, seed=seed, grid_step=h0_grid_step, points_per_axis=h0_points_per_axis
    )
    constant = smoothing_constant(dimension, order, h0.value)
    inner_points = box_grid(compact, grid_points)
    outer_points = box_grid(outer, 2 * grid_points - 1)
    window = _closed(compact)

    def norm(provider: JetProvider, points: Sequence[tuple[float, ...]]) -> float:
        return seminorm_cl(provider, points, order, q, kind=kind, samples=samples, seed=seed)

    rows = []
    for name, provider in corpus:
        if provider.dimension != dimension:
            raise PreconditionError(f"{name}: every function must have dimension {dimension}")
        smoothed = build_stilde(provider, order, n, window, omega)
        top = norm(smoothed, inner_points)
        bottom = norm(provider, outer_points)
        err = norm(difference(provider, smoothed), inner_points)
        if bottom > 0.0:
            ratio, error_ratio = top / bottom, err / bottom
        else:
            ratio = 0.0 if top == 0.0 else math.inf
            error_ratio = 0.0 if err == 0.0 else math.inf
        rows.append(BoundRow(name, top, bottom, ratio, err, error_ratio))
        logger.debug("%s: ratio %r against C=%r", name, ratio, constant)
    certificate = BoundCertificate(
        dimension=dimension,
        order=order,
        scale=n,
        h0=h0.value,
        h0_seed=h0.seed,
        h0_grid=h0.grid,
        h0_definition=h0.definition,
        constant=constant,
        rows=tuple(rows),
        growth=growth_table(
            dimension,
            growth_orders,
            seed=seed,
            grid_step=h0_grid_step,
            points_per_axis=h0_points_per_axis,
        ),
    )
    logger.info(
        "bound certificate d=%d ℓ=%d n=%d: C=%r, %d violation(s)",
        dimension,
        order,
        n,
        constant,
        len(certificate.violations),
    )
    return certificate


def rate_fit(table: ConvergenceTable, threshold: float = -0.8) -> RateFit:
    """Fit log(error) = slope·log(n) + c over rows with a positive C^ℓ error."""
    pairs = [(r.n, r.errors[-1]) for r in table.rows if r.errors[-1] > 0.0]
    if len(pairs) < 2:
        return RateFit(table.function, math.nan, math.nan, len(pairs), threshold)
    x = np.log([float(n) for n, _ in pairs])
    y = np.log([e for _, e in pairs])
    slope, intercept = np.polyfit(x, y, 1)
    return RateFit(table.function, float(slope), float(intercept), len(pairs), threshold)


def uniform_family_report(
    order: int,
    scales: Sequence[int],
    parameters: Sequence[float],
    compact: Box,
    omega: BoxUnion,
    q: SeminormSpec | None = None,
    *,
    grid_points: int = 11,
) -> UniformFamilyReport:
    """Worst C^ℓ error over the family γ_s = sin(s·x1) for each scale."""
    q = q or SeminormSpec()
    if compact.dimension != 1:
        raise PreconditionError("the sin(s·x1) family is one-dimensional")
    family = [
        (float(s), ExpressionProvider.from_text(f"sin({float(s):.17g}*x1)", 1)) for s in parameters
    ]
    points = box_grid(compact, grid_points)
    window = _closed(compact)
    rows = []
    for n in scales:
        worst, worst_s = -1.0, math.nan
        for s, provider in family:
            smoothed = build_stilde(provider, order, n, window, omega)
            err = seminorm_cl(difference(provider, smoothed), points, order, q)
            if err > worst:
                worst, worst_s = err, s
        rows.append(UniformRow(n, worst, worst_s))
    return UniformFamilyReport(order, tuple(float(s) for s in parameters), tuple(rows))
