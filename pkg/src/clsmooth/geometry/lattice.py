"""Lattice sets M_n and Φ_n(U) of scaled partition functions meeting a domain."""

from __future__ import annotations

import itertools
import logging
import math
from fractions import Fraction
from typing import TYPE_CHECKING

from clsmooth.exceptions import GeometryError, PreconditionError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from clsmooth.geometry.boxes import Box, BoxUnion

__all__ = [
    "LatticePoint",
    "cube_bounds",
    "cube_in_domain",
    "lattice_sets",
    "support_meets",
    "uncovered_cubes",
]

logger = logging.getLogger(__name__)

LatticePoint = tuple[int, ...]

_MAX_ENUMERATION = 5_000_000


def _check_scale(n: int) -> None:
    if n < 1:
        raise PreconditionError(f"scale must be >= 1, got {n}")


def cube_bounds(z: Sequence[int], n: int) -> tuple[list[Fraction], list[Fraction]]:
    """Exact bounds of the closed cube z/n + [-1/n, 1/n]^d."""
    _check_scale(n)
    return [Fraction(zi - 1, n) for zi in z], [Fraction(zi + 1, n) for zi in z]


def cube_in_domain(z: Sequence[int], n: int, omega: BoxUnion) -> bool:
    """Is the closed cube z/n + [-1/n, 1/n]^d inside the open union Ω?"""
    lower, upper = cube_bounds(z, n)
    return omega.contains_box(lower, upper)


def support_meets(z: Sequence[int], n: int, window: BoxUnion) -> bool:
    """Does the open support z/n + (-1/n, 1/n)^d meet the window?"""
    lower, upper = cube_bounds(z, n)
    for box in window.boxes:
        if window.open:
            hit = all(
                lo < b_hi and b_lo < hi and b_lo < b_hi
                for lo, hi, b_lo, b_hi in zip(lower, upper, box.lower, box.upper, strict=True)
            )
        else:
            hit = all(
                lo < b_hi and b_lo < hi
                for lo, hi, b_lo, b_hi in zip(lower, upper, box.lower, box.upper, strict=True)
            )
        if hit:
            return True
    return False


def _axis_ranges(n: int, box: Box) -> list[range]:
    return [
        range(math.floor(n * lo) - 1, math.ceil(n * hi) + 2)
        for lo, hi in zip(box.lower, box.upper, strict=True)
    ]


def _candidates(n: int, region: BoxUnion) -> list[LatticePoint]:
    seen: set[LatticePoint] = set()
    for box in region.boxes:
        ranges = _axis_ranges(n, box)
        if math.prod(len(r) for r in ranges) > _MAX_ENUMERATION:
            raise GeometryError(
                f"lattice enumeration at n={n} exceeds {_MAX_ENUMERATION} candidates"
            )
        seen.update(itertools.product(*ranges))
    return sorted(seen)


def lattice_sets(n: int, omega: BoxUnion, window: BoxUnion | None = None) -> list[LatticePoint]:
    """M_n, or Φ_n(window) = {z ∈ M_n : supp h_{n,z} ∩ window ≠ ∅}, sorted.

    Raises:
        GeometryError: If the enumeration region (window, or Ω without one)
            is unbounded.
    """
    _check_scale(n)
    region = window if window is not None else omega
    if not region.is_bounded:
        raise GeometryError(
            "unbounded lattice enumeration: pass a bounded window for an unbounded domain"
        )
    if region.dimension != omega.dimension:
        raise GeometryError("window and domain dimensions differ")
    found = [
        z
        for z in _candidates(n, region)
        if (window is None or support_meets(z, n, window)) and cube_in_domain(z, n, omega)
    ]
    logger.debug("lattice set n=%d: %d points", n, len(found))
    return found


def uncovered_cubes(n: int, omega: BoxUnion, window: BoxUnion) -> list[LatticePoint]:
    """Lattice points whose support meets the window but whose cube leaves Ω."""
    _check_scale(n)
    if not window.is_bounded:
        raise GeometryError("window must be bounded")
    return [
        z
        for z in _candidates(n, window)
        if support_meets(z, n, window) and not cube_in_domain(z, n, omega)
    ]
