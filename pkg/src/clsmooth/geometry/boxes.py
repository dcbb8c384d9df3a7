"""Axis-aligned boxes, finite box unions and closed sets with point clouds.

Containment of a closed query box in a union is decided exactly: every
axis is cut at all box bounds inside the query range, which splits the
query into atoms (products of single points and open intervals) that lie
entirely inside or entirely outside each box. Bounds may be floats or
``fractions.Fraction``; comparisons between the two are exact.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Union

import numpy as np

from clsmooth.exceptions import ConfigError, GeometryError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from pathlib import Path

    from numpy.typing import NDArray

__all__ = [
    "Box",
    "BoxUnion",
    "ClosedSet",
    "distance_to_closed",
    "load_box_union",
    "load_closed_set",
]

logger = logging.getLogger(__name__)

Number = Union[float, Fraction]
_Atom = tuple[Number, Number | None]  # (c, None) is the point c; (a, b) the open interval


def _bound_to_json(v: float) -> float | None:
    return None if math.isinf(v) else float(v)


def _bound_from_json(v: object, default: float, where: str) -> float:
    if v is None:
        return default
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}: expected a number or null, got {v!r}")
    return float(v)


@dataclass(frozen=True)
class Box:
    """Per-axis bounds lower_i <= upper_i; infinite bounds allowed."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self) -> None:
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        if not lower or len(lower) != len(upper):
            raise GeometryError(f"box bounds of mismatched length: {lower} / {upper}")
        if any(math.isnan(v) for v in lower + upper):
            raise GeometryError("box bounds must not be NaN")
        if any(lo > hi for lo, hi in zip(lower, upper, strict=True)):
            raise GeometryError(f"box lower bound exceeds upper bound: {lower} / {upper}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, dimension: int, lo: float, hi: float) -> Box:
        return cls((lo,) * dimension, (hi,) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @property
    def is_bounded(self) -> bool:
        return all(math.isfinite(v) for v in self.lower + self.upper)

    def has_interior(self) -> bool:
        return all(lo < hi for lo, hi in zip(self.lower, self.upper, strict=True))

    def contains(self, x: Sequence[Number], *, closed: bool = True) -> bool:
        if closed:
            return all(lo <= v <= hi for lo, v, hi in zip(self.lower, x, self.upper, strict=True))
        return all(lo < v < hi for lo, v, hi in zip(self.lower, x, self.upper, strict=True))

    def nearest(self, x: Sequence[float]) -> NDArray[np.float64]:
        """Nearest point of the closed box (per-axis clamping)."""
        return np.clip(np.asarray(x, dtype=float), self.lower, self.upper)

    def distance(self, x: Sequence[float]) -> float:
        """Euclidean distance from x to the closed box."""
        p = np.asarray(x, dtype=float)
        return float(np.linalg.norm(p - self.nearest(p)))

    def shrunk(self, r: float) -> Box | None:
        """Box with every face moved inward by r, or None when that is empty."""
        lower = tuple(lo + r for lo in self.lower)
        upper = tuple(hi - r for hi in self.upper)
        if any(lo > hi for lo, hi in zip(lower, upper, strict=True)):
            return None
        return Box(lower, upper)

    def volume(self) -> float:
        return math.prod(hi - lo for lo, hi in zip(self.lower, self.upper, strict=True))

    def to_json(self) -> list[list[float | None]]:
        return [
            [_bound_to_json(lo), _bound_to_json(hi)]
            for lo, hi in zip(self.lower, self.upper, strict=True)
        ]

    @classmethod
    def from_json(cls, data: object, where: str = "box") -> Box:
        if not isinstance(data, list) or not data:
            raise ConfigError(f"{where}: expected a non-empty list of [lo, hi] pairs")
        lower, upper = [], []
        for i, pair in enumerate(data):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ConfigError(f"{where}[{i}]: expected [lo, hi]")
            lower.append(_bound_from_json(pair[0], -math.inf, f"{where}[{i}][0]"))
            upper.append(_bound_from_json(pair[1], math.inf, f"{where}[{i}][1]"))
            if lower[-1] > upper[-1]:
                raise ConfigError(f"{where}[{i}]: lower bound exceeds upper bound")
        return cls(tuple(lower), tuple(upper))


def _atoms(lo: Number, hi: Number, cuts: Iterable[Number]) -> list[_Atom]:
    points = sorted({lo, hi, *(c for c in cuts if lo < c < hi)})
    atoms: list[_Atom] = [(p, None) for p in points if math.isfinite(p)]
    atoms.extend((a, b) for a, b in itertools.pairwise(points))
    return atoms


def _atom_inside(atom: _Atom, lo: float, hi: float, *, open_box: bool) -> bool:
    a, b = atom
    if b is None:
        return lo < a < hi if open_box else lo <= a <= hi
    return lo <= a and b <= hi


def _merge_boxes(boxes: Sequence[Box]) -> list[Box]:
    """Join closed boxes that agree off one axis and touch or overlap on it, axis by axis."""
    merged = list(boxes)
    d = merged[0].dimension
    for axis in range(d):
        groups: dict[tuple[tuple[float, float], ...], list[Box]] = {}
        for box in merged:
            key = tuple((box.lower[i], box.upper[i]) for i in range(d) if i != axis)
            groups.setdefault(key, []).append(box)
        merged = []
        for group in groups.values():
            group.sort(key=lambda b: b.lower[axis])
            current = group[0]
            for box in group[1:]:
                if box.lower[axis] <= current.upper[axis]:
                    if box.upper[axis] > current.upper[axis]:
                        upper = list(current.upper)
                        upper[axis] = box.upper[axis]
                        current = Box(current.lower, tuple(upper))
                else:
                    merged.append(current)
                    current = box
            merged.append(current)
    return sorted(merged, key=lambda b: (b.lower, b.upper))


@dataclass(frozen=True)
class BoxUnion:
    """A finite union of boxes, read as open boxes (Ω) or closed boxes (K, Y)."""

    boxes: tuple[Box, ...]
    open: bool = True

    def __post_init__(self) -> None:
        boxes = tuple(self.boxes)
        if not boxes:
            raise GeometryError("a box union needs at least one box")
        d = boxes[0].dimension
        if any(b.dimension != d for b in boxes):
            raise GeometryError("boxes of different dimensions in one union")
        object.__setattr__(self, "boxes", boxes)

    @classmethod
    def single(
        cls, lower: Sequence[float], upper: Sequence[float], *, open: bool = True
    ) -> BoxUnion:
        return cls((Box(tuple(lower), tuple(upper)),), open)

    @classmethod
    def cube(cls, dimension: int, lo: float, hi: float, *, open: bool = True) -> BoxUnion:
        return cls((Box.cube(dimension, lo, hi),), open)

    @classmethod
    def whole_space(cls, dimension: int) -> BoxUnion:
        return cls((Box.cube(dimension, -math.inf, math.inf),), True)

    @property
    def dimension(self) -> int:
        return self.boxes[0].dimension

    @property
    def is_bounded(self) -> bool:
        return all(b.is_bounded for b in self.boxes)

    def contains(self, x: Sequence[Number]) -> bool:
        return any(b.contains(x, closed=not self.open) for b in self.boxes)

    def bounding_box(self) -> Box:
        d = self.dimension
        return Box(
            tuple(min(b.lower[i] for b in self.boxes) for i in range(d)),
            tuple(max(b.upper[i] for b in self.boxes) for i in range(d)),
        )

    def contains_box(self, lower: Sequence[Number], upper: Sequence[Number]) -> bool:
        """Exact test: is the closed box [lower, upper] inside this union?"""
        d = self.dimension
        if len(lower) != d or len(upper) != d:
            raise GeometryError(f"query box of wrong dimension for d={d}")
        for box in self.boxes:
            if all(
                _atom_inside((lower[i], upper[i]), box.lower[i], box.upper[i], open_box=False)
                and (
                    not self.open
                    or (box.lower[i] < lower[i] and upper[i] < box.upper[i])
                )
                for i in range(d)
            ):
                return True
        per_axis = [
            _atoms(
                lower[i],
                upper[i],
                itertools.chain.from_iterable((b.lower[i], b.upper[i]) for b in self.boxes),
            )
            for i in range(d)
        ]
        for combo in itertools.product(*per_axis):
            if not any(
                all(
                    _atom_inside(combo[i], box.lower[i], box.upper[i], open_box=self.open)
                    for i in range(d)
                )
                for box in self.boxes
            ):
                return False
        return True

    def contains_box_in_interior(
        self, lower: Sequence[Number], upper: Sequence[Number]
    ) -> bool:
        """Exact test: is the closed box [lower, upper] inside the interior of this union?

        For a closed union the query is grown by half the smallest gap
        between distinct cut coordinates; the grid cells decide membership,
        so the grown box lies in the union exactly when the query lies in
        its interior, including across faces shared by touching boxes.
        """
        if self.open:
            return self.contains_box(lower, upper)
        d = self.dimension
        if len(lower) != d or len(upper) != d:
            raise GeometryError(f"query box of wrong dimension for d={d}")
        if not all(math.isfinite(v) for v in (*lower, *upper)):
            raise GeometryError("interior containment needs a bounded query box")
        lo = [Fraction(v) for v in lower]
        hi = [Fraction(v) for v in upper]
        delta = Fraction(1)
        for i in range(d):
            cuts = {lo[i], hi[i]}
            cuts.update(
                Fraction(c)
                for b in self.boxes
                for c in (b.lower[i], b.upper[i])
                if math.isfinite(c)
            )
            ordered = sorted(cuts)
            gaps = [b - a for a, b in itertools.pairwise(ordered)]
            if gaps:
                delta = min(delta, min(gaps) / 2)
        return self.contains_box([v - delta for v in lo], [v + delta for v in hi])

    def contains_open_box(self, lower: Sequence[Number], upper: Sequence[Number]) -> bool:
        """Exact test: is the open box (lower, upper) inside the union of the open boxes?"""
        d = self.dimension
        for box in self.boxes:
            if all(box.lower[i] <= lower[i] and upper[i] <= box.upper[i] for i in range(d)):
                return True
        per_axis: list[list[_Atom]] = []
        for i in range(d):
            points = sorted(
                {
                    lower[i],
                    upper[i],
                    *(
                        c
                        for b in self.boxes
                        for c in (b.lower[i], b.upper[i])
                        if lower[i] < c < upper[i]
                    ),
                }
            )
            atoms: list[_Atom] = [(p, None) for p in points[1:-1]]
            atoms.extend(itertools.pairwise(points))
            per_axis.append(atoms)
        return all(
            any(
                all(
                    _atom_inside(combo[i], box.lower[i], box.upper[i], open_box=True)
                    for i in range(d)
                )
                for box in self.boxes
            )
            for combo in itertools.product(*per_axis)
        )

    def eroded(self, r: float) -> BoxUnion | None:
        """The closed set {x : dist_∞(x, R^d \\ Ω) >= r} of the open union Ω, or None if empty.

        Whether the open cube x + (-r, r)^d fits in Ω only changes where a
        cube face crosses a box bound, so the answer is constant on the
        cells (points and open intervals per axis) of the grid of bounds
        shifted by ±r. Kept cells are merged back into larger boxes.
        """
        if r <= 0:
            raise GeometryError(f"erosion radius must be positive, got {r}")
        if not self.is_bounded:
            raise GeometryError("erosion needs a bounded domain")
        omega = self.interior()
        if len(self.boxes) == 1:
            shrunk = self.boxes[0].shrunk(r)
            return BoxUnion((shrunk,), False) if shrunk is not None else None
        d = self.dimension
        radius = Fraction(r)
        per_axis: list[list[tuple[float, float, Fraction]]] = []
        for i in range(d):
            first = min(b.lower[i] for b in self.boxes) + r
            last = max(b.upper[i] for b in self.boxes) - r
            coords = sorted(
                {
                    c
                    for b in self.boxes
                    for bound in (b.lower[i], b.upper[i])
                    for c in (bound - r, bound + r)
                    if first <= c <= last
                }
            )
            cells = [(c, c, Fraction(c)) for c in coords]
            cells.extend(
                (a, b, (Fraction(a) + Fraction(b)) / 2) for a, b in itertools.pairwise(coords)
            )
            per_axis.append(cells)
        kept: list[Box] = []
        for combo in itertools.product(*per_axis):
            center = [cell[2] for cell in combo]
            if not omega.contains(center):
                continue
            lower = [c - radius for c in center]
            upper = [c + radius for c in center]
            if omega.contains_open_box(lower, upper):
                kept.append(Box(tuple(c[0] for c in combo), tuple(c[1] for c in combo)))
        if not kept:
            return None
        return BoxUnion(tuple(_merge_boxes(kept)), False)

    def interior(self) -> BoxUnion:
        """The union of the open boxes; inside the true interior of a closed union."""
        return BoxUnion(self.boxes, True)

    def closure(self) -> BoxUnion:
        return BoxUnion(self.boxes, False)

    def volume(self) -> float:
        """Lebesgue measure of the union (overlaps counted once)."""
        if not self.is_bounded:
            return math.inf
        d = self.dimension
        cuts = [
            sorted({v for b in self.boxes for v in (b.lower[i], b.upper[i])}) for i in range(d)
        ]
        total = 0.0
        for cell in itertools.product(*(list(itertools.pairwise(c)) for c in cuts)):
            mid = [(a + b) / 2.0 for a, b in cell]
            if any(b.contains(mid, closed=True) for b in self.boxes):
                total += math.prod(b - a for a, b in cell)
        return total

    def to_json(self) -> dict[str, Any]:
        return {"boxes": [b.to_json() for b in self.boxes], "open": self.open}

    @classmethod
    def from_json(cls, data: object, where: str = "") -> BoxUnion:
        prefix = f"{where}." if where else ""
        if not isinstance(data, dict):
            raise ConfigError(f"{where or 'domain'}: expected an object with 'boxes'")
        raw = data.get("boxes")
        if not isinstance(raw, list) or not raw:
            raise ConfigError(f"{prefix}boxes: expected a non-empty list of boxes")
        boxes = tuple(Box.from_json(b, f"{prefix}boxes[{i}]") for i, b in enumerate(raw))
        if len({b.dimension for b in boxes}) != 1:
            raise ConfigError(f"{prefix}boxes: all boxes must share one dimension")
        is_open = data.get("open", True)
        if not isinstance(is_open, bool):
            raise ConfigError(f"{prefix}open: expected true or false")
        return cls(boxes, is_open)


@dataclass(frozen=True)
class ClosedSet:
    """Y = (closed box union) ∪ (finite point cloud), nonempty."""

    boxes: BoxUnion | None = None
    points: tuple[tuple[float, ...], ...] = ()

    def __post_init__(self) -> None:
        points = tuple(tuple(float(v) for v in p) for p in self.points)
        if self.boxes is None and not points:
            raise GeometryError("closed set Y must not be empty")
        if self.boxes is not None and self.boxes.open:
            object.__setattr__(self, "boxes", self.boxes.closure())
        dims = {len(p) for p in points}
        if self.boxes is not None:
            dims.add(self.boxes.dimension)
        if len(dims) != 1:
            raise GeometryError("closed set parts have different dimensions")
        object.__setattr__(self, "points", points)

    @property
    def dimension(self) -> int:
        if self.boxes is not None:
            return self.boxes.dimension
        return len(self.points[0])

    def nearest(self, x: Sequence[float]) -> tuple[NDArray[np.float64], float]:
        """An exact nearest point of Y to x and the Euclidean distance to it."""
        p = np.asarray(x, dtype=float)
        candidates: list[NDArray[np.float64]] = []
        if self.boxes is not None:
            candidates.extend(b.nearest(p) for b in self.boxes.boxes)
        if self.points:
            candidates.extend(np.asarray(self.points, dtype=float))
        stacked = np.vstack(candidates)
        dists = np.linalg.norm(stacked - p, axis=1)
        best = int(np.argmin(dists))
        return stacked[best], float(dists[best])

    def distance(self, x: Sequence[float]) -> float:
        return self.nearest(x)[1]

    def contains(self, x: Sequence[float]) -> bool:
        if self.boxes is not None and self.boxes.contains(x):
            return True
        return tuple(float(v) for v in x) in set(self.points)

    def sample(self, per_axis: int) -> list[tuple[float, ...]]:
        """Grid points of the boxes plus every cloud point."""
        out: list[tuple[float, ...]] = list(self.points)
        if self.boxes is not None:
            for b in self.boxes.boxes:
                if not b.is_bounded:
                    raise GeometryError("cannot sample an unbounded part of Y")
                axes = [
                    np.linspace(lo, hi, per_axis)
                    for lo, hi in zip(b.lower, b.upper, strict=True)
                ]
                out.extend(tuple(float(v) for v in p) for p in itertools.product(*axes))
        return out

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"open": False}
        data["boxes"] = [b.to_json() for b in self.boxes.boxes] if self.boxes else []
        if self.points:
            data["points"] = [list(p) for p in self.points]
        return data

    @classmethod
    def from_json(cls, data: object) -> ClosedSet:
        if not isinstance(data, dict):
            raise ConfigError("set: expected an object with 'boxes' and/or 'points'")
        raw_boxes = data.get("boxes") or []
        if not isinstance(raw_boxes, list):
            raise ConfigError("boxes: expected a list of boxes")
        boxes = None
        if raw_boxes:
            boxes = BoxUnion(
                tuple(Box.from_json(b, f"boxes[{i}]") for i, b in enumerate(raw_boxes)), False
            )
        raw_points = data.get("points") or []
        if not isinstance(raw_points, list):
            raise ConfigError("points: expected a list of coordinate lists")
        points = []
        for i, p in enumerate(raw_points):
            if not isinstance(p, list) or not p:
                raise ConfigError(f"points[{i}]: expected a coordinate list")
            points.append(tuple(_bound_from_json(v, 0.0, f"points[{i}]") for v in p))
        if boxes is None and not points:
            raise ConfigError("set: Y must contain at least one box or point")
        try:
            return cls(boxes, tuple(points))
        except GeometryError as e:
            raise ConfigError(f"set: {e}") from e


def distance_to_closed(closed: ClosedSet, x: Sequence[float]) -> float:
    """Exact Euclidean distance d_Y(x)."""
    return closed.distance(x)


def _read_json(path: Path) -> object:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        logger.error("Failed to read %s: %s", path, e)
        raise ConfigError(f"Failed to read {path}: {e}") from e


def load_box_union(path: Path) -> BoxUnion:
    """Read a domain file ``{"boxes": [[[lo, hi], ...], ...], "open": bool}``."""
    return BoxUnion.from_json(_read_json(path))


def load_closed_set(path: Path) -> ClosedSet:
    """Read a closed-set file: domain schema plus optional ``"points"``."""
    return ClosedSet.from_json(_read_json(path))
