"""Report output: CSV tables, the JSON suite summary and Rich console tables."""

from __future__ import annotations

import json
import logging
import math
from typing import TYPE_CHECKING, Any

from rich.console import Console
from rich.table import Table as RichTable

from clsmooth.bench.types import SuiteResult
from clsmooth.exceptions import ReportError
from clsmooth.tables import Table, format_float

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from clsmooth.bench.types import (
        BoundCertificate,
        ConvergenceTable,
        RateFit,
        UniformFamilyReport,
    )

__all__ = [
    "bound_csv",
    "convergence_csv",
    "growth_csv",
    "load_summary",
    "print_bound",
    "print_convergence",
    "print_rates",
    "print_suites",
    "print_uniform",
    "rate_csv",
    "save_summary",
    "suite_summary",
    "uniform_csv",
]

logger = logging.getLogger(__name__)


# -- CSV -----------------------------------------------------------------------


def convergence_csv(table: ConvergenceTable) -> Table:
    """Columns n, err_C0..err_Cℓ; the first column is the scale list as given."""
    out = Table(("n", *(f"err_C{j}" for j in range(table.order + 1))))
    for row in table.rows:
        out.add(row.n, *row.errors)
    return out


def bound_csv(certificate: BoundCertificate) -> Table:
    out = Table(
        (
            "function",
            "smoothed_norm",
            "source_norm",
            "ratio",
            "constant",
            "error_norm",
            "error_ratio",
            "pass",
        )
    )
    failing = set(certificate.violations) | set(certificate.error_violations)
    for row in certificate.rows:
        out.add(
            row.function,
            row.smoothed_norm,
            row.source_norm,
            row.ratio,
            certificate.constant,
            row.error_norm,
            row.error_ratio,
            row.function not in failing,
        )
    return out


def growth_csv(certificate: BoundCertificate) -> Table:
    """C(ℓ) = 1 + factor·‖h_0‖_{C^ℓ} per order."""
    out = Table(("order", "h0", "factor", "constant"))
    for row in certificate.growth:
        out.add(row.order, row.h0, row.factor, row.constant)
    return out


def rate_csv(fits: Sequence[RateFit]) -> Table:
    out = Table(("function", "slope", "intercept", "points", "threshold", "below_threshold"))
    for fit in fits:
        out.add(
            fit.function,
            fit.slope,
            fit.intercept,
            fit.points,
            fit.threshold,
            fit.below_threshold,
        )
    return out


def uniform_csv(report: UniformFamilyReport) -> Table:
    out = Table(("n", "sup_error", "worst_parameter"))
    for row in report.rows:
        out.add(row.n, row.sup_error, row.worst_parameter)
    return out


# -- JSON summary --------------------------------------------------------------


def suite_summary(results: Sequence[SuiteResult]) -> list[dict[str, Any]]:
    """``[{suite, pass, max_violation}]``; an infinite violation becomes null."""
    return [
        {
            "suite": r.suite,
            "pass": r.passed,
            "max_violation": r.max_violation if math.isfinite(r.max_violation) else None,
        }
        for r in results
    ]


def save_summary(results: Sequence[SuiteResult], path: Path) -> None:
    """Write the suite summary as JSON.

    Raises:
        ReportError: If the file cannot be written.
    """
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(suite_summary(results), indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        msg = f"Failed to save suite summary: {e}"
        raise ReportError(msg) from e
    logger.info("Saved suite summary to %s", path)


def load_summary(path: Path) -> list[SuiteResult]:
    """Read a summary written by ``save_summary``.

    Raises:
        ReportError: If the file is missing, unreadable or malformed.
    """
    if not path.exists():
        raise ReportError(f"Summary file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        msg = f"Failed to load suite summary: {e}"
        raise ReportError(msg) from e
    try:
        return [
            SuiteResult(
                suite=str(item["suite"]),
                passed=bool(item["pass"]),
                max_violation=(
                    math.inf if item["max_violation"] is None else float(item["max_violation"])
                ),
            )
            for item in data
        ]
    except (KeyError, TypeError, ValueError) as e:
        msg = f"Invalid suite summary format: {e}"
        raise ReportError(msg) from e


# -- console -------------------------------------------------------------------


def _verdict(ok: bool) -> str:
    return "[green]PASS[/green]" if ok else "[red]FAIL[/red]"


def print_convergence(table: ConvergenceTable, console: Console | None = None) -> None:
    """Print a convergence table with wall times."""
    console = console or Console()
    title = f"{table.function or 'γ'}: {table.operator}, ℓ={table.order}"
    rich = RichTable(title=title, show_lines=False)
    rich.add_column("n", justify="right", style="bold")
    for j in range(table.order + 1):
        rich.add_column(f"C^{j} error", justify="right")
    rich.add_column("seconds", justify="right")
    for i, row in enumerate(table.rows):
        style = "yellow" if i in table.non_monotone else None
        rich.add_row(
            str(row.n), *(f"{e:.3e}" for e in row.errors), f"{row.seconds:.2f}", style=style
        )
    console.print(rich)


def print_bound(certificate: BoundCertificate, console: Console | None = None) -> None:
    console = console or Console()
    console.print(
        f"[bold]C = {format_float(certificate.constant)}[/bold] "
        f"(d={certificate.dimension}, ℓ={certificate.order}, n={certificate.scale}, "
        f"‖h0‖={format_float(certificate.h0)}, {certificate.h0_grid}, "
        f"seed {certificate.h0_seed})"
    )
    rich = RichTable(title="Operator bound", show_lines=False)
    for name in ("Function", "‖S̃γ‖", "‖γ‖", "Ratio", "Error ratio", "Verdict"):
        rich.add_column(name, justify="left" if name == "Function" else "right")
    failing = set(certificate.violations) | set(certificate.error_violations)
    for row in certificate.rows:
        rich.add_row(
            row.function,
            f"{row.smoothed_norm:.4g}",
            f"{row.source_norm:.4g}",
            f"{row.ratio:.4g}",
            f"{row.error_ratio:.4g}",
            _verdict(row.function not in failing),
        )
    console.print(rich)
    if certificate.growth:
        growth = RichTable(title="Growth of C in ℓ")
        for name in ("ℓ", "‖h0‖", "factor", "C"):
            growth.add_column(name, justify="right")
        for g in certificate.growth:
            growth.add_row(str(g.order), f"{g.h0:.6g}", f"{g.factor:.6g}", f"{g.constant:.6g}")
        console.print(growth)


def print_rates(fits: Sequence[RateFit], console: Console | None = None) -> None:
    console = console or Console()
    rich = RichTable(title="Empirical rates (reported, not asserted)")
    rich.add_column("Function")
    rich.add_column("Slope", justify="right")
    rich.add_column("Points", justify="right")
    rich.add_column(f"<= {fits[0].threshold:g}" if fits else "threshold", justify="right")
    for fit in fits:
        mark = "[green]yes[/green]" if fit.below_threshold else "[yellow]no[/yellow]"
        rich.add_row(fit.function, f"{fit.slope:.3f}", str(fit.points), mark)
    console.print(rich)


def print_uniform(report: UniformFamilyReport, console: Console | None = None) -> None:
    console = console or Console()
    lo, hi = min(report.parameters), max(report.parameters)
    rich = RichTable(title=f"sup over s ∈ [{lo:g}, {hi:g}] of the C^{report.order} error")
    rich.add_column("n", justify="right", style="bold")
    rich.add_column("sup error", justify="right")
    rich.add_column("worst s", justify="right")
    for row in report.rows:
        rich.add_row(str(row.n), f"{row.sup_error:.3e}", f"{row.worst_parameter:g}")
    console.print(rich)


def print_suites(results: Sequence[SuiteResult], console: Console | None = None) -> None:
    """Print suite verdicts, with the first failure details under each failing suite."""
    console = console or Console()
    rich = RichTable(title="Property suites", show_lines=True)
    rich.add_column("Suite", style="bold")
    rich.add_column("Checks", justify="right")
    rich.add_column("Max violation", justify="right")
    rich.add_column("Verdict", justify="center")
    rich.add_column("Details")
    for r in results:
        rich.add_row(
            r.suite,
            str(r.checks),
            f"{r.max_violation:.3g}",
            _verdict(r.passed),
            "\n".join(r.details),
        )
    console.print(rich)
    failed = sum(1 for r in results if not r.passed)
    if failed:
        console.print(f"[red]{failed} of {len(results)} suite(s) failed[/red]")
    else:
        console.print(f"[green]All {len(results)} suites passed[/green]")
