"""Bump profile, periodic partition of unity and its norm."""

from clsmooth.partition.bump import BUMP_DEFINITION, BumpProfile, SmoothStep, bump_jet
from clsmooth.partition.lattice import PeriodicPartition, partition_jet, scaled_partition_jet
from clsmooth.partition.norm import H0Norm, h0_norm, smoothing_constant

__all__ = [
    "BUMP_DEFINITION",
    "BumpProfile",
    "H0Norm",
    "PeriodicPartition",
    "SmoothStep",
    "bump_jet",
    "h0_norm",
    "partition_jet",
    "scaled_partition_jet",
    "smoothing_constant",
]
