"""Shared fixtures for clsmooth tests."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import pytest

from clsmooth.config import ClsmoothConfig, default_config

if TYPE_CHECKING:
    from pathlib import Path


def _write_json(path: Path, data: object) -> Path:
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


@pytest.fixture
def config() -> ClsmoothConfig:
    """Default configuration."""
    return default_config()


@pytest.fixture
def interval_domain(tmp_path: Path) -> Path:
    """Open domain (-1, 1) as a box-union file."""
    return _write_json(tmp_path / "domain.json", {"boxes": [[[-1.0, 1.0]]], "open": True})


@pytest.fixture
def half_window(tmp_path: Path) -> Path:
    """Closed window [-1/2, 1/2]."""
    return _write_json(tmp_path / "window.json", {"boxes": [[[-0.5, 0.5]]], "open": False})


@pytest.fixture
def square_window(tmp_path: Path) -> Path:
    """Closed window [-1/2, 3/2]^2."""
    return _write_json(
        tmp_path / "square.json", {"boxes": [[[-0.5, 1.5], [-0.5, 1.5]]], "open": False}
    )


@pytest.fixture
def closed_set_file(tmp_path: Path) -> Path:
    """Y = [0, 1] together with the isolated point 2.5."""
    return _write_json(
        tmp_path / "set.json",
        {"boxes": [[[0.0, 1.0]]], "open": False, "points": [[2.5]]},
    )
