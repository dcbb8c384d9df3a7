"""CSV tables shared by the CLI and the verification harness.

Floats are written with 17 significant digits so every value round-trips;
the dialect is comma-separated with a header row and LF line endings.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from clsmooth.exceptions import ReportError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from pathlib import Path

__all__ = ["Table", "format_cell", "format_float", "format_point", "render_csv", "write_csv"]

logger = logging.getLogger(__name__)

Cell = float | int | str | bool | None


def format_float(value: float) -> str:
    """``%.17g``; non-finite values print as ``inf``, ``-inf`` and ``nan``."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return "%.17g" % value


def format_point(x: Iterable[float]) -> str:
    """Space-joined coordinates, for a single CSV cell."""
    return " ".join(format_float(float(v)) for v in x)


def format_cell(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


@dataclass
class Table:
    """A header and rows of cells, rendered as CSV."""

    header: tuple[str, ...]
    rows: list[tuple[Cell, ...]] = field(default_factory=list)

    def add(self, *cells: Cell) -> None:
        if len(cells) != len(self.header):
            raise ReportError(f"row of {len(cells)} cells for {len(self.header)} columns")
        self.rows.append(cells)

    def render(self) -> str:
        return render_csv(self.header, self.rows)

    def write(self, path: Path) -> None:
        write_csv(path, self.header, self.rows)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> None:
    """Write a CSV table.

    Raises:
        ReportError: If the file cannot be written.
    """
    text = render_csv(header, rows)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        logger.error("Failed to write %s: %s", path, e)
        raise ReportError(f"Failed to write {path}: {e}") from e
    logger.info("Wrote %s", path)
