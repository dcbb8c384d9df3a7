"""Compact exhaustions K_1 ⊆ K_2 ⊆ ... of a bounded box-union domain."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from clsmooth.exceptions import GeometryError, PreconditionError
from clsmooth.geometry.boxes import BoxUnion

__all__ = ["MAX_DEPTH", "Exhaustion", "default_exhaustion", "margin_holds"]

logger = logging.getLogger(__name__)

MAX_DEPTH = 12
_SCALE_LIMIT = 2**24


def margin_holds(inner: BoxUnion, outer: BoxUnion, scale: int) -> bool:
    """Exact check of inner + [-2/scale, 2/scale]^d ⊆ interior(outer)."""
    pad = Fraction(2, scale)
    return all(
        outer.contains_box_in_interior(
            [Fraction(v) - pad for v in box.lower],
            [Fraction(v) + pad for v in box.upper],
        )
        for box in inner.boxes
    )


@dataclass(frozen=True)
class Exhaustion:
    """Closed compacts K_1..K_{depth+1} with scales m_1 < ... < m_depth.

    The extra compact K_{depth+1} is kept so the last stage has a
    container for its support certificate.
    """

    domain: BoxUnion
    compacts: tuple[BoxUnion, ...]
    scales: tuple[int, ...]
    radii: tuple[float, ...]

    @property
    def depth(self) -> int:
        return len(self.scales)

    def _check_stage(self, j: int) -> None:
        if not 1 <= j <= self.depth:
            raise GeometryError(f"stage {j} beyond exhaustion depth {self.depth}")

    def compact(self, j: int) -> BoxUnion:
        """K_j (1-based); K_{depth+1} is available as the last container."""
        if not 1 <= j <= len(self.compacts):
            raise GeometryError(f"compact K_{j} beyond exhaustion depth {self.depth}")
        return self.compacts[j - 1]

    def scale(self, j: int) -> int:
        self._check_stage(j)
        return self.scales[j - 1]

    def margin_ok(self, j: int) -> bool:
        self._check_stage(j)
        return margin_holds(self.compact(j), self.compact(j + 1), self.scale(j))

    def to_dict(self) -> dict[str, Any]:
        return {
            "radii": list(self.radii),
            "scales": list(self.scales),
            "compacts": [k.to_json() for k in self.compacts],
        }


def _shrink(omega: BoxUnion, r: float) -> BoxUnion | None:
    """Closed {x : dist_∞(x, R^d \\ Ω) >= r}; overlapping boxes of Ω are handled exactly."""
    return omega.eroded(r)


def _minimal_scale(inner: BoxUnion, outer: BoxUnion, floor: int, gap: float) -> int:
    # The margin predicate is monotone in the scale, and 2/m < gap suffices.
    hi = max(floor, math.floor(2.0 / gap) + 1)
    while not margin_holds(inner, outer, hi):
        hi *= 2
        if hi > _SCALE_LIMIT:
            raise GeometryError(f"no lattice scale up to {_SCALE_LIMIT} fits the margin")
    lo = floor
    while lo < hi:
        mid = (lo + hi) // 2
        if margin_holds(inner, outer, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def default_exhaustion(
    omega: BoxUnion,
    depth: int,
    *,
    initial_radius: float = 0.25,
    max_depth: int = MAX_DEPTH,
) -> Exhaustion:
    """K_j = {x : dist_∞(x, R^d \\ Ω) >= r_j}, r_j = r0·2^{-j}; m_j minimal with the margin.

    Raises:
        GeometryError: If Ω is unbounded or K_1 is empty.
        PreconditionError: If depth lies outside [1, max_depth].
    """
    if not 1 <= max_depth <= MAX_DEPTH:
        raise PreconditionError(f"max_depth must be in [1, {MAX_DEPTH}], got {max_depth}")
    if not 1 <= depth <= max_depth:
        raise PreconditionError(f"depth must be in [1, {max_depth}], got {depth}")
    if initial_radius <= 0:
        raise PreconditionError(f"initial radius must be positive, got {initial_radius}")
    if not omega.is_bounded:
        raise GeometryError("default exhaustion needs a bounded domain")
    radii = tuple(initial_radius * 2.0 ** (-j) for j in range(1, depth + 2))
    compacts: list[BoxUnion] = []
    for j, r in enumerate(radii, start=1):
        k = _shrink(omega, r)
        if k is None:
            if j == 1:
                raise GeometryError(
                    f"K_1 is empty: the domain is thinner than 2*{r!r}; "
                    "use a smaller initial radius"
                )
            raise GeometryError(f"K_{j} is empty")
        compacts.append(k)
    scales: list[int] = []
    for j in range(depth):
        floor = scales[-1] + 1 if scales else 1
        gap = radii[j] - radii[j + 1]
        scales.append(_minimal_scale(compacts[j], compacts[j + 1], floor, gap))
    logger.info("exhaustion depth=%d radii=%s scales=%s", depth, radii[:depth], scales)
    return Exhaustion(omega, tuple(compacts), tuple(scales), radii)
