"""Metric extension off a closed set via dyadic shells and anchored blends."""

from clsmooth.dugundji.report import (
    ContinuityStep,
    DugundjiReport,
    DugundjiRow,
    OffsetOutsideBall,
    dugundji_report,
    locality_gap,
)
from clsmooth.dugundji.shells import Anchor, DugundjiExtension, ShellStructure, dugundji_eval

__all__ = [
    "Anchor",
    "ContinuityStep",
    "DugundjiExtension",
    "DugundjiReport",
    "DugundjiRow",
    "OffsetOutsideBall",
    "ShellStructure",
    "dugundji_eval",
    "dugundji_report",
    "locality_gap",
]
