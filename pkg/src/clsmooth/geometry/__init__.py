"""Box-union domains, closed sets, lattice sets and compact exhaustions."""

from clsmooth.geometry.boxes import (
    Box,
    BoxUnion,
    ClosedSet,
    distance_to_closed,
    load_box_union,
    load_closed_set,
)
from clsmooth.geometry.exhaustion import MAX_DEPTH, Exhaustion, default_exhaustion, margin_holds
from clsmooth.geometry.lattice import (
    LatticePoint,
    cube_bounds,
    cube_in_domain,
    lattice_sets,
    support_meets,
    uncovered_cubes,
)

__all__ = [
    "MAX_DEPTH",
    "Box",
    "BoxUnion",
    "ClosedSet",
    "Exhaustion",
    "LatticePoint",
    "cube_bounds",
    "cube_in_domain",
    "default_exhaustion",
    "distance_to_closed",
    "lattice_sets",
    "load_box_union",
    "load_closed_set",
    "margin_holds",
    "support_meets",
    "uncovered_cubes",
]
