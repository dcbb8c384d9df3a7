"""Shared contracts between the calculus, smoothing and extension layers."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol, runtime_checkable

if TYPE_CHECKING:
    from collections.abc import Sequence

    from clsmooth.calculus.jet import Jet

__all__ = ["JetProvider", "Point", "as_point"]

Point = tuple[float, ...]


def as_point(x: Sequence[float]) -> Point:
    """Normalize a coordinate sequence to a tuple of floats."""
    return tuple(float(v) for v in x)


@runtime_checkable
class JetProvider(Protocol):
    """Anything that can report the jet of a map R^d -> R^m at a point.

    Implemented by expression-backed functions, smoothed functions and
    extended functions alike, so each can feed the next operator.
    """

    @property
    def dimension(self) -> int:
        """Number of input variables d."""
        ...

    @property
    def target_dim(self) -> int:
        """Number of output components m."""
        ...

    def jet(self, x: Sequence[float], order: int) -> Jet:
        """Return all partial derivatives of order <= ``order`` at ``x``."""
        ...
