"""Extension operators. Importing this package registers them by name.

Built-in operators in category ``extension``:

- ``halfspace``: reflection across one face (:func:`extend_halfspace`)
- ``corner``: iterated half-space extension off [0,∞)^M × R^{d-M}
- ``cube``: two-sided gluing per axis off [0,1]^d
- ``projection``: constant extension from a slice
- ``dugundji``: metric extension off a closed set (continuous only)
"""

from clsmooth.dugundji.shells import DugundjiExtension
from clsmooth.extension.axis import AxisExtension, default_nodes, solve_axis_weights, vandermonde
from clsmooth.extension.operators import (
    ExtendedFunction,
    HalfspaceExtension,
    IntervalExtension,
    ProjectionExtension,
    extend_corner,
    extend_cube,
    extend_halfspace,
    face_jump,
    lift_componentwise,
    projection_extension,
)
from clsmooth.registry import default_registry

__all__ = [
    "AxisExtension",
    "ExtendedFunction",
    "HalfspaceExtension",
    "IntervalExtension",
    "ProjectionExtension",
    "default_nodes",
    "extend_corner",
    "extend_cube",
    "extend_halfspace",
    "face_jump",
    "lift_componentwise",
    "projection_extension",
    "solve_axis_weights",
    "vandermonde",
]

default_registry.register("extension", "halfspace", extend_halfspace)
default_registry.register("extension", "corner", extend_corner)
default_registry.register("extension", "cube", extend_cube)
default_registry.register("extension", "projection", projection_extension)
default_registry.register("extension", "dugundji", DugundjiExtension)
