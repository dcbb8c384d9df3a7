"""Configuration system for clsmooth.

Numerical defaults, sampling seeds and every verification tolerance live
in typed dataclass sections, optionally overridden from a TOML file.
"""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, field, fields
from typing import TYPE_CHECKING, TypeVar

import tomli_w

if sys.version_info >= (3, 12):
    import tomllib
else:
    import tomli as tomllib

from clsmooth.exceptions import ConfigError

if TYPE_CHECKING:
    from pathlib import Path

_T = TypeVar("_T")

__all__ = [
    "ClsmoothConfig",
    "DugundjiConfig",
    "ExhaustionConfig",
    "ExtensionConfig",
    "HarnessConfig",
    "JetsConfig",
    "SamplingConfig",
    "SmoothingConfig",
    "ToleranceConfig",
    "default_config",
    "load_config",
    "save_config",
    "validate_config",
]

logger = logging.getLogger(__name__)


@dataclass
class JetsConfig:
    """[jets] section."""

    max_order: int = 6


@dataclass
class SamplingConfig:
    """[sampling] section."""

    seed: int = 20240917
    form_samples: int = 2048
    h0_grid_step: float = 1e-3  # d = 1
    h0_points_per_axis: int = 81  # d >= 2


@dataclass
class ExhaustionConfig:
    """[exhaustion] section."""

    initial_radius: float = 0.25  # r_j = initial_radius * 2**-j
    max_depth: int = 12


@dataclass
class SmoothingConfig:
    """[smoothing] section."""

    first_scale: int = 4
    collar_epsilon: float = 0.25


@dataclass
class ExtensionConfig:
    """[extension] section."""

    nodes: list[float] = field(default_factory=list)  # empty: b_k = k + 1


@dataclass
class DugundjiConfig:
    """[dugundji] section."""

    n_min: int = -8
    n_max: int = 40
    anchor_refinement: int = 3


@dataclass
class ToleranceConfig:
    """[tolerances] section."""

    partition_sum: float = 1e-12
    partition_derivative: float = 1e-9
    polynomial_exactness: float = 1e-10
    cube_polynomial: float = 1e-8
    linearity: float = 1e-10
    extension_linearity: float = 1e-12
    stage_agreement: float = 1e-12
    tensor_reconstruction: float = 1e-10
    restriction: float = 1e-12
    cross_face: float = 1e-4
    vandermonde: float = 1e-9
    vandermonde_exact: float = 1e-12
    weight_sum: float = 1e-12
    sup_ratio: float = 1e-12
    polarization: float = 1e-9
    jet_finite_difference: float = 1e-5
    expr_finite_difference: float = 1e-6
    axis_order: float = 1e-10
    operator_bound_spread: float = 0.10
    lipschitz: float = 1e-12
    h0_seed_spread: float = 1e-3


@dataclass
class HarnessConfig:
    """[harness] section."""

    scales: list[int] = field(default_factory=lambda: [4, 8, 16, 32])
    grid_points: int = 41
    family_points: int = 11
    random_points: int = 1000
    expr_points: int = 200
    fd_step: float = 1e-5
    rate_threshold: float = -0.8


@dataclass
class ClsmoothConfig:
    """Root configuration combining all sections."""

    jets: JetsConfig = field(default_factory=JetsConfig)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    exhaustion: ExhaustionConfig = field(default_factory=ExhaustionConfig)
    smoothing: SmoothingConfig = field(default_factory=SmoothingConfig)
    extension: ExtensionConfig = field(default_factory=ExtensionConfig)
    dugundji: DugundjiConfig = field(default_factory=DugundjiConfig)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    harness: HarnessConfig = field(default_factory=HarnessConfig)


_SECTIONS: dict[str, type] = {
    "jets": JetsConfig,
    "sampling": SamplingConfig,
    "exhaustion": ExhaustionConfig,
    "smoothing": SmoothingConfig,
    "extension": ExtensionConfig,
    "dugundji": DugundjiConfig,
    "tolerances": ToleranceConfig,
    "harness": HarnessConfig,
}


def default_config() -> ClsmoothConfig:
    """Return a config with all default values."""
    return ClsmoothConfig()


def _config_to_dict(config: ClsmoothConfig) -> dict[str, object]:
    """Convert ClsmoothConfig to a nested dict suitable for TOML serialization."""
    return {name: dict(vars(getattr(config, name))) for name in _SECTIONS}


def save_config(config: ClsmoothConfig, path: Path) -> None:
    """Save configuration to a TOML file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    data = _config_to_dict(config)
    try:
        with path.open("wb") as f:
            tomli_w.dump(data, f)
        logger.info("Saved config to %s", path)
    except OSError as e:
        logger.error("Failed to save config to %s: %s", path, e)
        raise ConfigError(f"Failed to save config to {path}: {e}") from e


def _coerce(path: str, value: object, default: object) -> object:
    """Check ``value`` against the type of the field default."""
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"{path}: expected a boolean, got {value!r}")
        return value
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{path}: expected an integer, got {value!r}")
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{path}: expected a number, got {value!r}")
        return float(value)
    if isinstance(default, list):
        if not isinstance(value, list):
            raise ConfigError(f"{path}: expected an array, got {value!r}")
        return list(value)
    return value


def _load_section(cls: type[_T], name: str, data: object) -> _T:
    """Load a dataclass section from a dict, ignoring unknown keys."""
    if not isinstance(data, dict):
        raise ConfigError(f"{name}: expected a table, got {data!r}")
    template = cls()
    values: dict[str, object] = {}
    for f in fields(cls):  # type: ignore[arg-type]
        if f.name in data:
            values[f.name] = _coerce(f"{name}.{f.name}", data[f.name], getattr(template, f.name))
    return cls(**values)


def validate_config(config: ClsmoothConfig) -> None:
    """Check value ranges; raises ConfigError naming the offending field."""
    if not 0 <= config.jets.max_order <= 6:
        raise ConfigError("jets.max_order: must lie in [0, 6]")
    if config.sampling.form_samples < 1:
        raise ConfigError("sampling.form_samples: must be >= 1")
    if not 0 < config.sampling.h0_grid_step < 1:
        raise ConfigError("sampling.h0_grid_step: must lie in (0, 1)")
    if config.sampling.h0_points_per_axis < 3:
        raise ConfigError("sampling.h0_points_per_axis: must be >= 3")
    if config.exhaustion.initial_radius <= 0:
        raise ConfigError("exhaustion.initial_radius: must be > 0")
    if not 1 <= config.exhaustion.max_depth <= 12:
        raise ConfigError("exhaustion.max_depth: must lie in [1, 12]")
    if config.smoothing.first_scale < 1:
        raise ConfigError("smoothing.first_scale: must be >= 1")
    if not 0 < config.smoothing.collar_epsilon < 0.5:
        raise ConfigError("smoothing.collar_epsilon: must lie in (0, 1/2)")
    for i, node in enumerate(config.extension.nodes):
        if isinstance(node, bool) or not isinstance(node, (int, float)) or node <= 0:
            raise ConfigError(f"extension.nodes[{i}]: expected a positive number")
    if config.dugundji.n_min > config.dugundji.n_max:
        raise ConfigError("dugundji.n_min: must not exceed dugundji.n_max")
    if config.dugundji.anchor_refinement < 1:
        raise ConfigError("dugundji.anchor_refinement: must be >= 1")
    for name, value in vars(config.tolerances).items():
        if value <= 0:
            raise ConfigError(f"tolerances.{name}: must be > 0")
    if not config.harness.scales:
        raise ConfigError("harness.scales: must not be empty")
    for i, n in enumerate(config.harness.scales):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ConfigError(f"harness.scales[{i}]: expected an integer >= 1")
    if config.harness.grid_points < 2:
        raise ConfigError("harness.grid_points: must be >= 2")
    if config.harness.family_points < 2:
        raise ConfigError("harness.family_points: must be >= 2")
    if config.harness.fd_step <= 0:
        raise ConfigError("harness.fd_step: must be > 0")


def load_config(path: Path) -> ClsmoothConfig:
    """Load configuration from a TOML file.

    Missing sections or keys get default values; the result is validated.
    """
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")

    try:
        raw = path.read_bytes()
        data = tomllib.loads(raw.decode("utf-8"))
    except (OSError, UnicodeDecodeError, tomllib.TOMLDecodeError) as e:
        logger.error("Failed to load config from %s: %s", path, e)
        raise ConfigError(f"Failed to load config from {path}: {e}") from e

    config = ClsmoothConfig()
    for name, cls in _SECTIONS.items():
        if name in data:
            setattr(config, name, _load_section(cls, name, data[name]))

    validate_config(config)
    logger.info("Loaded config from %s", path)
    return config
