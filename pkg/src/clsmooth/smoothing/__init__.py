"""Smoothing operators and their closed-form results."""

from clsmooth.smoothing.family import FamilySchedule, interpolated_family
from clsmooth.smoothing.operators import (
    SupportCertificate,
    build_sn,
    build_stilde,
    certify_support,
    cube_smoothing,
)
from clsmooth.smoothing.provider import (
    ComponentProvider,
    ExpressionProvider,
    LinearCombinationProvider,
    RestrictedProvider,
    StackedProvider,
    difference,
    provider_value,
)
from clsmooth.smoothing.smoothed import (
    SmoothedFunction,
    SmoothingTerm,
    TensorWitness,
    evaluate_jet,
    load_smoothed,
    save_smoothed,
    tensor_witness,
)

__all__ = [
    "ComponentProvider",
    "ExpressionProvider",
    "FamilySchedule",
    "LinearCombinationProvider",
    "RestrictedProvider",
    "SmoothedFunction",
    "SmoothingTerm",
    "StackedProvider",
    "SupportCertificate",
    "TensorWitness",
    "build_sn",
    "build_stilde",
    "certify_support",
    "cube_smoothing",
    "difference",
    "evaluate_jet",
    "interpolated_family",
    "load_smoothed",
    "provider_value",
    "save_smoothed",
    "tensor_witness",
]
