"""Dyadic shells around a closed set Y and the Dugundji-type extension.

Off Y the extension is a convex combination Σ_j h_j(x) γ(y_j). The
weights factor as ψ_n(x) · h_w(x / s_n): ψ_n is the one-dimensional
partition h_n evaluated at t = -log2 d_Y(x), so it lives on the shell
W_n = {2^{-n-1} < d_Y < 2^{-n+1}}, and h_w is the periodic partition on
a lattice of spacing s_n = 2^{-n}/√d, whose cells have diameter 2^{-n+1}.
Each used cell (n, w) gets an anchor x(j) ∈ cell ∩ W_n and a nearest
point y(j) ∈ Y, resolved lazily and cached insert-once.
"""

from __future__ import annotations

import itertools
import logging
import math
import threading
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from clsmooth.calculus.jet import Jet
from clsmooth.exceptions import InvariantError, PreconditionError
from clsmooth.partition.lattice import PeriodicPartition, axis_partition_series

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from clsmooth.geometry.boxes import ClosedSet
    from clsmooth.types import JetProvider

__all__ = [
    "Anchor",
    "DugundjiExtension",
    "ShellStructure",
    "dugundji_eval",
]

logger = logging.getLogger(__name__)

Cell = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class Anchor:
    """Resolved anchor pair of one cover cell."""

    cell: Cell
    point: tuple[float, ...]
    nearest: tuple[float, ...]
    distance: float
    in_shell: bool

    @property
    def shell(self) -> int:
        return self.cell[0]

    @property
    def bound(self) -> float:
        return 2.0 ** (-self.shell + 1)

    @property
    def ok(self) -> bool:
        """d(x(j), y(j)) < 2^{-n(j)+1}."""
        return self.distance < self.bound


@dataclass
class ShellStructure:
    """Shells, cover cells and the anchor cache for one closed set Y.

    Shell indices are clamped to [n_min, n_max]; queries whose distance
    to Y falls outside that dyadic range use the nearest in-range shell.
    """

    closed: ClosedSet
    n_min: int = -8
    n_max: int = 40
    refinement: int = 3
    _anchors: dict[Cell, Anchor] = field(default_factory=dict, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)
    _partition: PeriodicPartition = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.n_min > self.n_max:
            raise PreconditionError(f"empty shell range [{self.n_min}, {self.n_max}]")
        if self.refinement < 0:
            raise PreconditionError(f"refinement must be >= 0, got {self.refinement}")
        self._partition = PeriodicPartition(self.closed.dimension)

    @property
    def dimension(self) -> int:
        return self.closed.dimension

    def spacing(self, n: int) -> float:
        """s_n = 2^{-n}/√d."""
        return 2.0 ** (-n) / math.sqrt(self.dimension)

    def in_shell(self, n: int, distance: float) -> bool:
        return 2.0 ** (-n - 1) < distance < 2.0 ** (-n + 1)

    def shell_weights(self, distance: float) -> tuple[list[tuple[int, float]], bool]:
        """[(n, ψ_n)] with positive weight, and whether the shell was clamped."""
        if distance <= 0.0:
            raise PreconditionError("shell weights are defined off Y only")
        t = -math.log2(distance)
        if t <= self.n_min:
            return [(self.n_min, 1.0)], t <= self.n_min - 1
        if t >= self.n_max:
            return [(self.n_max, 1.0)], t >= self.n_max + 1
        base = math.floor(t)
        out = []
        for n in (base, base + 1):
            if abs(t - n) < 1.0:
                psi = axis_partition_series(n, t, 0).value
                if psi > 0.0:
                    out.append((n, psi))
        return out, False

    def shell_index(self, x: Sequence[float]) -> int:
        """Smallest shell index carrying weight at x."""
        weights, _ = self.shell_weights(self.closed.distance(x))
        return min(n for n, _ in weights)

    def weights(self, x: Sequence[float]) -> list[tuple[Cell, float]]:
        """Nonnegative cell weights h_j(x), summing to one, for x off Y."""
        point = tuple(float(v) for v in x)
        distance = self.closed.distance(point)
        shells, clamped = self.shell_weights(distance)
        if clamped:
            logger.warning(
                "d_Y=%r outside the shell range [%d, %d]; clamped",
                distance,
                self.n_min,
                self.n_max,
            )
        out: list[tuple[Cell, float]] = []
        for n, psi in shells:
            s = self.spacing(n)
            scaled = [v / s for v in point]
            for w in self._partition.active(scaled):
                h = self._partition.value(w, scaled)
                if h > 0.0:
                    out.append(((n, w), psi * h))
        return out

    def _candidates(self, cell: Cell) -> list[tuple[float, ...]]:
        n, w = cell
        s = self.spacing(n)
        center = [wi * s for wi in w]
        steps = 2**self.refinement
        offsets = sorted(
            itertools.product(range(-steps + 1, steps), repeat=self.dimension),
            key=lambda o: (sum(abs(v) for v in o), o),
        )
        return [tuple(c + s * o / steps for c, o in zip(center, off)) for off in offsets]

    def _resolve(self, cell: Cell, query: Sequence[float] | None) -> Anchor:
        n = cell[0]
        candidates = self._candidates(cell)
        chosen = None
        for p in candidates:
            if self.in_shell(n, self.closed.distance(p)):
                chosen = p
                break
        if (
            chosen is None
            and query is not None
            and self.in_shell(n, self.closed.distance(query))
        ):
            chosen = tuple(float(v) for v in query)
        if chosen is None:
            chosen = candidates[0]
        nearest, distance = self.closed.nearest(chosen)
        return Anchor(
            cell,
            chosen,
            tuple(float(v) for v in nearest),
            distance,
            self.in_shell(n, self.closed.distance(chosen)),
        )

    def anchor(self, cell: Cell, query: Sequence[float] | None = None) -> Anchor:
        """The cached anchor of a cell, resolving it on first use."""
        with self._lock:
            cached = self._anchors.get(cell)
        if cached is not None:
            return cached
        resolved = self._resolve(cell, query)
        logger.debug("anchor %s -> %s (d=%r)", cell, resolved.nearest, resolved.distance)
        with self._lock:
            return self._anchors.setdefault(cell, resolved)

    def anchors(self) -> list[Anchor]:
        """Snapshot of every resolved anchor, ordered by cell."""
        with self._lock:
            return [self._anchors[c] for c in sorted(self._anchors)]

    def blend(self, x: Sequence[float]) -> list[tuple[Anchor, float]]:
        """Anchors and weights used at x, checking the strict anchor bound.

        Raises:
            InvariantError: If an anchor of an in-range shell violates
                d(x(j), y(j)) < 2^{-n(j)+1}.
        """
        point = tuple(float(v) for v in x)
        _, clamped = self.shell_weights(self.closed.distance(point))
        out = []
        for cell, weight in self.weights(point):
            anchor = self.anchor(cell, point)
            if not clamped and not anchor.ok:
                raise InvariantError(
                    f"anchor bound violated for cell {cell}: d(x(j), y(j))={anchor.distance!r} "
                    f">= {anchor.bound!r} (anchor {anchor.point}, nearest {anchor.nearest})"
                )
            out.append((anchor, weight))
        return out


@dataclass(frozen=True)
class DugundjiExtension:
    """ℰ(γ): γ on Y, Σ_j h_j γ(y_j) off Y. Continuous, so jets stop at order 0."""

    source: JetProvider
    shells: ShellStructure

    def __post_init__(self) -> None:
        if self.source.dimension != self.shells.dimension:
            raise PreconditionError("source and closed set dimensions differ")

    @property
    def dimension(self) -> int:
        return self.source.dimension

    @property
    def target_dim(self) -> int:
        return self.source.target_dim

    def value(self, x: Sequence[float]) -> NDArray[np.float64]:
        point = tuple(float(v) for v in x)
        if self.shells.closed.distance(point) == 0.0:
            return self.source.jet(point, 0).value
        total = np.zeros(self.target_dim)
        for anchor, weight in self.shells.blend(point):
            total += weight * self.source.jet(anchor.nearest, 0).value
        return total

    def jet(self, x: Sequence[float], order: int) -> Jet:
        if order != 0:
            raise PreconditionError("the metric extension is continuous only; use order 0")
        point = tuple(float(v) for v in x)
        return Jet(point, 0, self.value(point).reshape((1,) * len(point) + (-1,)))


def dugundji_eval(
    source: JetProvider, x: Sequence[float], shells: ShellStructure
) -> NDArray[np.float64]:
    """ℰ(γ)(x) for a fixed shell structure (anchors shared across calls)."""
    return DugundjiExtension(source, shells).value(x)
