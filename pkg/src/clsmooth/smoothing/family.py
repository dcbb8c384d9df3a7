"""The interpolated family S_t, t ∈ (0, 1], between consecutive S̃ stages."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from clsmooth.exceptions import PreconditionError
from clsmooth.partition.bump import SmoothStep
from clsmooth.smoothing.operators import build_stilde

if TYPE_CHECKING:
    from clsmooth.geometry.boxes import BoxUnion
    from clsmooth.smoothing.smoothed import SmoothedFunction
    from clsmooth.types import JetProvider

__all__ = ["FamilySchedule", "interpolated_family"]

logger = logging.getLogger(__name__)

_MAX_STAGE = 40


@dataclass(frozen=True)
class FamilySchedule:
    """t_j = 2^{1-j} with scales n_j = first_scale · 2^{j-1} and collar ε."""

    first_scale: int = 4
    epsilon: float = 0.25

    def __post_init__(self) -> None:
        if self.first_scale < 1:
            raise PreconditionError(f"first scale must be >= 1, got {self.first_scale}")
        if not 0.0 <= self.epsilon < 0.5:
            raise PreconditionError(f"collar epsilon must be in [0, 1/2), got {self.epsilon}")

    def time(self, j: int) -> float:
        return 2.0 ** (1 - j)

    def scale(self, j: int) -> int:
        return self.first_scale * 2 ** (j - 1)

    def stage(self, t: float) -> int:
        """The j with t_{j+1} < t <= t_j."""
        if not 0.0 < t <= 1.0:
            raise PreconditionError(f"family parameter must lie in (0, 1], got {t!r}")
        j = 1
        while t <= self.time(j + 1):
            j += 1
            if j > _MAX_STAGE:
                raise PreconditionError(f"t={t!r} is below the schedule horizon")
        return j

    def weight(self, t: float) -> float:
        """ρ((t - t_{j+1}) / (t_j - t_{j+1})); 0 on the lower collar, 1 on the upper."""
        j = self.stage(t)
        lo, hi = self.time(j + 1), self.time(j)
        u = (t - lo) / (hi - lo)
        return SmoothStep()((u - self.epsilon) / (1.0 - 2.0 * self.epsilon))


def interpolated_family(
    provider: JetProvider,
    order: int,
    window: BoxUnion,
    t: float,
    *,
    omega: BoxUnion | None = None,
    schedule: FamilySchedule | None = None,
    strict: bool = True,
) -> SmoothedFunction:
    """S_t = H_{j+1} + ρ(·)(H_j - H_{j+1}) with H_j = S̃_{n_j}(γ) on the window.

    Returns H_j itself when the weight is exactly one and H_{j+1} when it
    is exactly zero, so S_{t_j} = H_j term for term.

    Raises:
        PreconditionError: If t is not in (0, 1].
    """
    schedule = schedule or FamilySchedule()
    j = schedule.stage(t)
    rho = schedule.weight(t)
    logger.debug("S_t at t=%r: stage %d, weight %r", t, j, rho)

    def stage(i: int) -> SmoothedFunction:
        return build_stilde(provider, order, schedule.scale(i), window, omega, strict=strict)

    if rho == 1.0:
        return stage(j)
    if rho == 0.0:
        return stage(j + 1)
    return stage(j + 1).combine(stage(j), 1.0 - rho, rho)
