"""Multi-indices and graded enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache
from typing import TYPE_CHECKING

import numpy as np

from clsmooth.exceptions import PreconditionError

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from numpy.typing import NDArray

__all__ = [
    "MAX_ORDER",
    "MultiIndex",
    "check_order",
    "factorial_table",
    "multi_indices",
    "order_mask",
]

MAX_ORDER = 6


def check_order(order: int, limit: int = MAX_ORDER) -> None:
    """Reject negative orders and orders above ``limit``."""
    if order < 0:
        raise PreconditionError(f"order must be >= 0, got {order}")
    if order > limit:
        raise PreconditionError(f"order {order} exceeds the supported maximum {limit}")


@dataclass(frozen=True, order=True)
class MultiIndex:
    """A d-tuple of non-negative integers α = (α_1, …, α_d)."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise PreconditionError("multi-index needs at least one entry")
        if any(a < 0 for a in self.entries):
            raise PreconditionError(f"multi-index entries must be >= 0: {self.entries}")

    @classmethod
    def of(cls, *entries: int) -> MultiIndex:
        return cls(tuple(entries))

    @classmethod
    def zero(cls, dimension: int) -> MultiIndex:
        return cls((0,) * dimension)

    @classmethod
    def unit(cls, dimension: int, axis: int) -> MultiIndex:
        entries = [0] * dimension
        entries[axis] = 1
        return cls(tuple(entries))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> int:
        """|α| = Σ α_i."""
        return sum(self.entries)

    def factorial(self) -> int:
        """α! = Π α_i!."""
        return math.prod(math.factorial(a) for a in self.entries)

    def power(self, y: Sequence[float]) -> float:
        """The monomial y^α."""
        return math.prod(float(v) ** a for v, a in zip(y, self.entries, strict=True))

    def __add__(self, other: MultiIndex) -> MultiIndex:
        return MultiIndex(tuple(a + b for a, b in zip(self.entries, other.entries, strict=True)))

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.entries)

    @classmethod
    def parse(cls, text: str) -> MultiIndex:
        """Inverse of ``str``: ``"2,0,1"`` → (2, 0, 1)."""
        try:
            return cls(tuple(int(part) for part in text.split(",")))
        except ValueError as e:
            raise PreconditionError(f"invalid multi-index {text!r}") from e


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` non-negative parts, descending lex."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


@cache
def multi_indices(dimension: int, order: int, *, exact: bool = False) -> tuple[MultiIndex, ...]:
    """All α with |α| <= order (or == order when ``exact``), graded then descending lex.

    For d = 2, order 2: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2).
    """
    if dimension < 1:
        raise PreconditionError(f"dimension must be >= 1, got {dimension}")
    if order < 0:
        raise PreconditionError(f"order must be >= 0, got {order}")
    totals = [order] if exact else range(order + 1)
    return tuple(MultiIndex(c) for total in totals for c in _compositions(total, dimension))


@cache
def _order_mask(dimension: int, order: int) -> NDArray[np.bool_]:
    grids = np.indices((order + 1,) * dimension)
    mask: NDArray[np.bool_] = grids.sum(axis=0) <= order
    mask.setflags(write=False)
    return mask


def order_mask(dimension: int, order: int) -> NDArray[np.bool_]:
    """Boolean array of shape (order+1,)*d, True where |α| <= order."""
    return _order_mask(dimension, order)


@cache
def _factorial_table(dimension: int, order: int) -> NDArray[np.float64]:
    per_axis = np.array([math.factorial(a) for a in range(order + 1)], dtype=float)
    table = np.ones((order + 1,) * dimension)
    for axis in range(dimension):
        shape = [1] * dimension
        shape[axis] = order + 1
        table = table * per_axis.reshape(shape)
    table.setflags(write=False)
    return table


def factorial_table(dimension: int, order: int) -> NDArray[np.float64]:
    """Array of α! over the dense (order+1,)*d index grid."""
    return _factorial_table(dimension, order)
