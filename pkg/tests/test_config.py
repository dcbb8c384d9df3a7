"""Tests for clsmooth.config module."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from clsmooth.config import (
    ClsmoothConfig,
    default_config,
    load_config,
    save_config,
    validate_config,
)
from clsmooth.exceptions import ConfigError

if TYPE_CHECKING:
    from pathlib import Path


class TestDefaultConfig:
    def test_default_has_all_sections(self):
        config = default_config()
        assert config.jets is not None
        assert config.sampling is not None
        assert config.exhaustion is not None
        assert config.smoothing is not None
        assert config.extension is not None
        assert config.dugundji is not None
        assert config.tolerances is not None
        assert config.harness is not None

    def test_default_harness(self):
        config = default_config()
        assert config.harness.scales == [4, 8, 16, 32]
        assert config.harness.grid_points == 41

    def test_default_tolerances(self):
        config = default_config()
        assert config.tolerances.cross_face == 1e-4
        assert config.tolerances.extension_linearity == 1e-12

    def test_default_nodes_empty(self):
        assert default_config().extension.nodes == []

    def test_defaults_validate(self):
        validate_config(default_config())


class TestConfigRoundTrip:
    def test_save_and_load_defaults(self, tmp_path: Path):
        path = tmp_path / "config.toml"
        original = default_config()
        save_config(original, path)
        loaded = load_config(path)
        assert loaded == original

    def test_save_and_load_with_values(self, tmp_path: Path):
        path = tmp_path / "config.toml"
        config = ClsmoothConfig()
        config.sampling.seed = 7
        config.harness.scales = [2, 4]
        config.extension.nodes = [1.0, 1.5, 2.5]
        config.tolerances.cross_face = 1e-3

        save_config(config, path)
        loaded = load_config(path)

        assert loaded.sampling.seed == 7
        assert loaded.harness.scales == [2, 4]
        assert loaded.extension.nodes == [1.0, 1.5, 2.5]
        assert loaded.tolerances.cross_face == 1e-3

    def test_load_partial_toml_gets_defaults(self, tmp_path: Path):
        """A TOML with only [harness] should get defaults for other sections."""
        path = tmp_path / "config.toml"
        path.write_text("[harness]\ngrid_points = 9\n", encoding="utf-8")

        loaded = load_config(path)
        assert loaded.harness.grid_points == 9
        assert loaded.harness.scales == [4, 8, 16, 32]
        assert loaded.dugundji.n_max == 40

    def test_integer_accepted_for_float(self, tmp_path: Path):
        path = tmp_path / "config.toml"
        path.write_text("[exhaustion]\ninitial_radius = 1\n", encoding="utf-8")
        loaded = load_config(path)
        assert loaded.exhaustion.initial_radius == 1.0
        assert isinstance(loaded.exhaustion.initial_radius, float)

    def test_unknown_keys_ignored(self, tmp_path: Path):
        path = tmp_path / "config.toml"
        path.write_text("[jets]\nmax_order = 3\nflavour = 'x'\n", encoding="utf-8")
        assert load_config(path).jets.max_order == 3

    def test_creates_parent_directories(self, tmp_path: Path):
        path = tmp_path / "deep" / "nested" / "config.toml"
        save_config(default_config(), path)
        assert path.exists()


class TestConfigErrors:
    def test_load_nonexistent_raises(self, tmp_path: Path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "nonexistent.toml")

    def test_load_invalid_toml_raises(self, tmp_path: Path):
        path = tmp_path / "bad.toml"
        path.write_text("this is not [valid toml", encoding="utf-8")
        with pytest.raises(ConfigError, match="Failed to load"):
            load_config(path)

    def test_wrong_type_names_field(self, tmp_path: Path):
        path = tmp_path / "config.toml"
        path.write_text('[harness]\ngrid_points = "many"\n', encoding="utf-8")
        with pytest.raises(ConfigError, match="harness.grid_points"):
            load_config(path)

    def test_boolean_is_not_an_integer(self, tmp_path: Path):
        path = tmp_path / "config.toml"
        path.write_text("[sampling]\nseed = true\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="sampling.seed"):
            load_config(path)

    def test_section_must_be_table(self, tmp_path: Path):
        path = tmp_path / "config.toml"
        path.write_text("jets = 3\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="jets"):
            load_config(path)

    def test_out_of_range_value(self, tmp_path: Path):
        path = tmp_path / "config.toml"
        path.write_text("[jets]\nmax_order = 9\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="jets.max_order"):
            load_config(path)

    @pytest.mark.parametrize(
        ("section", "name", "value", "field"),
        [
            ("smoothing", "collar_epsilon", 0.5, "smoothing.collar_epsilon"),
            ("dugundji", "n_min", 50, "dugundji.n_min"),
            ("tolerances", "cross_face", 0.0, "tolerances.cross_face"),
            ("harness", "scales", [], "harness.scales"),
            ("harness", "scales", [4, 0], "harness.scales[1]"),
            ("extension", "nodes", [1.0, -2.0], "extension.nodes[1]"),
        ],
    )
    def test_validation(self, section: str, name: str, value: object, field: str):
        config = default_config()
        setattr(getattr(config, section), name, value)
        with pytest.raises(ConfigError, match=field.replace("[", r"\[").replace("]", r"\]")):
            validate_config(config)
