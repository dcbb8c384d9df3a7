"""CLI interface for clsmooth.

Typer-based command-line interface with Rich output formatting. Exit codes:
0 on success, 1 when a check fails or an operator raises, 2 on usage and
configuration errors.
"""

from __future__ import annotations

import itertools
import logging
from pathlib import Path
from typing import TYPE_CHECKING, Annotated

import numpy as np
import typer
from rich.console import Console
from rich.table import Table

from clsmooth import __version__
from clsmooth.calculus.multiindex import check_order
from clsmooth.config import ClsmoothConfig, default_config, load_config
from clsmooth.exceptions import ClsmoothError, ConfigError, ExpressionError, PreconditionError
from clsmooth.geometry.boxes import Box, BoxUnion, load_box_union, load_closed_set
from clsmooth.smoothing.provider import ExpressionProvider
from clsmooth.tables import Table as CsvTable
from clsmooth.tables import format_point

if TYPE_CHECKING:
    from collections.abc import Sequence

    from clsmooth.types import JetProvider

__all__ = ["app"]

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="clsmooth",
    help="Smoothing and extension operators for C^l maps, with a verification harness.",
    no_args_is_help=True,
    rich_markup_mode="rich",
)
console = Console()

_USAGE_EXIT = 2


@app.callback()
def _main_callback(
    ctx: typer.Context,
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Enable debug logging"),
    ] = False,
    config: Annotated[
        Path | None,
        typer.Option("--config", help="TOML configuration file (defaults apply when omitted)"),
    ] = None,
) -> None:
    """Configure global options."""
    level = logging.DEBUG if verbose else logging.WARNING
    logging.getLogger("clsmooth").setLevel(level)
    if config is None:
        ctx.obj = default_config()
        return
    try:
        ctx.obj = load_config(config)
    except ConfigError as e:
        console.print(f"[red]Configuration error:[/red] {e}")
        raise typer.Exit(code=_USAGE_EXIT) from e


def _config(ctx: typer.Context) -> ClsmoothConfig:
    return ctx.obj if isinstance(ctx.obj, ClsmoothConfig) else default_config()


def _fail(e: ClsmoothError) -> typer.Exit:
    """Print an operator error and choose the exit code for it."""
    if isinstance(e, (ConfigError, ExpressionError)):
        console.print(f"[red]Invalid input:[/red] {e}")
        return typer.Exit(code=_USAGE_EXIT)
    console.print(f"[red]Error:[/red] {e}")
    return typer.Exit(code=1)


def _provider(
    fn: str, config: ClsmoothConfig, dimension: int | None = None
) -> ExpressionProvider:
    return ExpressionProvider.from_text(fn, dimension, max_order=config.jets.max_order)


def _check_order(order: int, config: ClsmoothConfig) -> None:
    """Reject an --order above ``jets.max_order`` as a usage error."""
    try:
        check_order(order, config.jets.max_order)
    except PreconditionError as e:
        console.print(f"[red]Invalid input:[/red] {e} (jets.max_order)")
        raise typer.Exit(code=_USAGE_EXIT) from e


def _parse_source(source: str, corner_axes: int) -> tuple[str, int] | None:
    """Split ``corner:M`` into ("corner", M); None for an unknown source."""
    name, sep, axes = source.partition(":")
    if sep:
        if name != "corner" or not axes.isdigit():
            return None
        corner_axes = int(axes)
    if name not in ("halfspace", "corner", "cube"):
        return None
    return name, corner_axes


def _single_box(path: Path) -> Box:
    union = load_box_union(path)
    if len(union.boxes) != 1:
        raise ConfigError(f"{path}: expected exactly one box, got {len(union.boxes)}")
    return union.boxes[0]


def _grid(box: Box, per_axis: int) -> list[tuple[float, ...]]:
    if not box.is_bounded:
        raise PreconditionError("the grid window must be bounded")
    if per_axis < 2:
        raise PreconditionError(f"grid needs at least 2 points per axis, got {per_axis}")
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in zip(box.lower, box.upper, strict=True)]
    return [tuple(float(v) for v in p) for p in itertools.product(*axes)]


def _value_table(provider: JetProvider, points: Sequence[tuple[float, ...]]) -> CsvTable:
    """Columns x, value1..value_m at each grid point."""
    m = provider.target_dim
    out = CsvTable(("x", *(f"value{i + 1}" for i in range(m))))
    for x in points:
        out.add(format_point(x), *(float(v) for v in provider.jet(x, 0).value))
    return out


def _padded_hull(points: Sequence[tuple[float, ...]], pad: float) -> Box:
    """Bounding box of ``points`` grown by ``pad`` on every side."""
    array = np.asarray(points, dtype=float)
    lower = tuple(float(v) - pad for v in array.min(axis=0))
    upper = tuple(float(v) + pad for v in array.max(axis=0))
    return Box(lower, upper)


def _scales(text: str) -> list[int]:
    try:
        scales = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise PreconditionError(f"invalid scale list {text!r}") from e
    if not scales or any(n < 1 for n in scales):
        raise PreconditionError(f"scales must be positive integers, got {text!r}")
    return scales


@app.command()
def version() -> None:
    """Show clsmooth version."""
    console.print(f"clsmooth {__version__}")


@app.command()
def smooth(
    ctx: typer.Context,
    fn: Annotated[str, typer.Option("--fn", help="Expression(s) γ, components separated by ';'")],
    output: Annotated[Path, typer.Option("--output", "-o", help="SmoothedFunction JSON path")],
    order: Annotated[int, typer.Option("--order", "-l", help="Jet order ℓ")] = 1,
    scale: Annotated[int, typer.Option("--scale", "-n", help="Lattice scale n")] = 8,
    domain: Annotated[
        Path | None, typer.Option("--domain", help="Open domain Ω (box-union JSON)")
    ] = None,
    window: Annotated[
        Path | None, typer.Option("--window", help="Evaluation window (box-union JSON)")
    ] = None,
    grid_csv: Annotated[
        Path | None, typer.Option("--grid-csv", help="Also write values on a window grid")
    ] = None,
    grid_points: Annotated[
        int, typer.Option("--grid-points", help="Grid points per axis for --grid-csv")
    ] = 11,
    stage: Annotated[
        int | None,
        typer.Option("--stage", help="Build the exhaustion stage S_j of a bounded Ω instead"),
    ] = None,
) -> None:
    """Build S̃_n(γ) on a window and save it as JSON.

    Without --window the closure of Ω is used and partition functions
    leaving Ω are dropped instead of rejected. With --stage j the default
    exhaustion of Ω is built from the [exhaustion] settings and S_j is
    saved; --scale is then ignored and --window only shapes the grid.
    """
    from clsmooth.geometry.exhaustion import default_exhaustion
    from clsmooth.smoothing.operators import build_sn, build_stilde
    from clsmooth.smoothing.smoothed import save_smoothed

    config = _config(ctx)
    _check_order(order, config)
    try:
        provider = _provider(fn, config)
        d = provider.dimension
        omega = load_box_union(domain) if domain else BoxUnion.whole_space(d)
        if stage is None:
            label = f"S̃_{scale}"
            region = load_box_union(window) if window else omega.closure()
            with console.status(f"Building {label} ...", spinner="dots"):
                smoothed = build_stilde(
                    provider, order, scale, region, omega, strict=window is not None
                )
        else:
            if domain is None:
                raise PreconditionError("--stage needs a bounded --domain")
            exhaustion = default_exhaustion(
                omega,
                stage,
                initial_radius=config.exhaustion.initial_radius,
                max_depth=config.exhaustion.max_depth,
            )
            label = f"S_{stage} (m={exhaustion.scale(stage)})"
            region = load_box_union(window) if window else exhaustion.compact(stage)
            with console.status(f"Building {label} ...", spinner="dots"):
                smoothed = build_sn(provider, order, exhaustion, stage)
        save_smoothed(smoothed, output)
        if grid_csv is not None:
            _value_table(smoothed, _grid(region.bounding_box(), grid_points)).write(grid_csv)
    except ClsmoothError as e:
        raise _fail(e) from e

    console.print(
        f"[green]{label}[/green] of {provider.source} (d={d}, m={provider.target_dim}, "
        f"ℓ={order}): [bold]{len(smoothed)}[/bold] terms -> {output}"
    )
    if grid_csv is not None:
        console.print(f"  grid values -> {grid_csv}")


def _faces(source: str, d: int, corner_axes: int) -> list[tuple[int, float, int]]:
    """(axis, boundary, side) for every face the extension crosses."""
    if source == "halfspace":
        return [(0, 0.0, 1)]
    if source == "corner":
        return [(axis, 0.0, 1) for axis in range(corner_axes)]
    return [(axis, b, s) for axis in range(d) for b, s in ((0.0, 1), (1.0, -1))]


@app.command()
def extend(
    ctx: typer.Context,
    fn: Annotated[str, typer.Option("--fn", help="Expression(s) γ, components separated by ';'")],
    output: Annotated[Path, typer.Option("--output", "-o", help="Grid CSV path")],
    source: Annotated[
        str,
        typer.Option("--source", help="Source region: halfspace, corner, corner:M or cube"),
    ] = "cube",
    corner_axes: Annotated[
        int,
        typer.Option(
            "--corner-axes", help="M for the corner [0,∞)^M × R^{d-M}; corner:M overrides it"
        ),
    ] = 1,
    order: Annotated[int, typer.Option("--order", "-l", help="Jet order ℓ")] = 1,
    window: Annotated[
        Path | None,
        typer.Option("--window", help="Ambient grid window, one box (default [-1/2, 3/2]^d)"),
    ] = None,
    grid_points: Annotated[
        int, typer.Option("--grid-points", help="Grid points per axis")
    ] = 21,
) -> None:
    """Extend γ off a half-space, corner or cube; write grid values and face diagnostics."""
    from clsmooth.extension.operators import face_jump
    from clsmooth.registry import default_registry

    config = _config(ctx)
    _check_order(order, config)
    parsed = _parse_source(source, corner_axes)
    if parsed is None:
        console.print(
            f"[red]Unknown source:[/red] {source!r}. Use halfspace, corner, corner:M or cube."
        )
        raise typer.Exit(code=_USAGE_EXIT)
    source, corner_axes = parsed
    nodes = tuple(config.extension.nodes) or None
    try:
        provider = _provider(fn, config)
        d = provider.dimension
        kwargs: dict[str, object] = {"nodes": nodes}
        if source == "corner":
            kwargs["axes"] = corner_axes
        extended = default_registry.create("extension", source, provider, order, **kwargs)
        box = _single_box(window) if window else Box.cube(d, -0.5, 1.5)
        _value_table(extended, _grid(box, grid_points)).write(output)

        rows = []
        for axis, boundary, side in _faces(source, d, corner_axes):
            face_point = [0.5] * d
            face_point[axis] = boundary
            jump = face_jump(extended, axis, boundary, face_point, order, side=side)
            rows.append((axis, boundary, jump))
    except ClsmoothError as e:
        raise _fail(e) from e

    table = Table(title=f"{source} extension of {provider.source}, ℓ={order}")
    table.add_column("Axis", justify="right")
    table.add_column("Face", justify="right")
    table.add_column("Relative jet jump", justify="right")
    tolerance = config.tolerances.cross_face
    for axis, boundary, jump in rows:
        colour = "green" if jump <= tolerance else "red"
        table.add_row(str(axis), f"x{axis + 1}={boundary:g}", f"[{colour}]{jump:.3e}[/{colour}]")
    console.print(table)
    console.print(f"Grid values -> {output}")
    if any(jump > tolerance for _, _, jump in rows):
        console.print(f"[red]Face jets disagree beyond {tolerance:g}[/red]")
        raise typer.Exit(code=1)


@app.command()
def dugundji(
    ctx: typer.Context,
    fn: Annotated[str, typer.Option("--fn", help="Expression(s) γ, components separated by ';'")],
    closed_set: Annotated[
        Path, typer.Option("--set", help="Closed set Y (boxes and optional points, JSON)")
    ],
    output: Annotated[Path, typer.Option("--output", "-o", help="Value table CSV path")],
    window: Annotated[
        Path | None, typer.Option("--window", help="Query window, one box (JSON)")
    ] = None,
    grid: Annotated[int, typer.Option("--grid", help="Grid points per axis")] = 21,
    continuity: Annotated[
        Path | None, typer.Option("--continuity", help="Also write the approach path CSV")
    ] = None,
) -> None:
    """Evaluate the metric extension ℰ(γ) off Y and check its properties."""
    from clsmooth.dugundji.report import dugundji_report
    from clsmooth.dugundji.shells import ShellStructure

    config = _config(ctx)
    tol = config.tolerances
    try:
        closed = load_closed_set(closed_set)
        provider = _provider(fn, config, closed.dimension)
        if window is not None:
            box = _single_box(window)
        else:
            box = _padded_hull(closed.sample(2), 1.0)
        shells = ShellStructure(
            closed, config.dugundji.n_min, config.dugundji.n_max, config.dugundji.anchor_refinement
        )
        with console.status("Evaluating ℰ(γ) ...", spinner="dots"):
            report = dugundji_report(provider, shells, box, grid, seed=config.sampling.seed)
        report.table().write(output)
        if continuity is not None:
            report.continuity_table().write(continuity)
    except ClsmoothError as e:
        raise _fail(e) from e

    passed = report.passed(
        restriction=tol.restriction, weight_sum=tol.weight_sum, sup_ratio=tol.sup_ratio
    )
    summary = Table(title=f"Metric extension of {provider.source}")
    summary.add_column("Check")
    summary.add_column("Value", justify="right")
    summary.add_row("restriction error", f"{report.restriction_error:.3e}")
    summary.add_row("weight sum error", f"{report.weight_sum_error:.3e}")
    summary.add_row("min weight", f"{report.min_weight:.3e}")
    summary.add_row("sup ratio", f"{report.sup_ratio:.17g}")
    summary.add_row("hull containment", "yes" if report.hull_ok else "[red]no[/red]")
    summary.add_row(
        "anchors", f"{report.anchors_checked} ({report.anchor_violations} violating)"
    )
    console.print(summary)
    console.print(f"Values -> {output}")
    if not passed:
        console.print("[red]Metric extension checks failed[/red]")
        raise typer.Exit(code=1)


@app.command()
def report(
    ctx: typer.Context,
    kind: Annotated[
        str, typer.Option("--kind", help="convergence, bound, rate or uniform")
    ],
    output: Annotated[Path, typer.Option("--output", "-o", help="CSV path")],
    fn: Annotated[
        list[str] | None,
        typer.Option("--fn", help="Expression(s) γ; repeatable (default: the corpus)"),
    ] = None,
    dimension: Annotated[
        int, typer.Option("--dimension", "-d", help="Corpus dimension when --fn is omitted")
    ] = 1,
    domain: Annotated[
        Path | None, typer.Option("--domain", help="Open domain Ω (default (-2,2)^d)")
    ] = None,
    compact: Annotated[
        Path | None, typer.Option("--compact", help="Compact K, one box (default [-1,1]^d)")
    ] = None,
    scales: Annotated[
        str | None, typer.Option("--scales", help="Comma-separated scales (default from config)")
    ] = None,
    scale: Annotated[int, typer.Option("--scale", "-n", help="Scale n for --kind bound")] = 8,
    order: Annotated[int, typer.Option("--order", "-l", help="Jet order ℓ")] = 1,
    seminorm: Annotated[
        str, typer.Option("--seminorm", help="coordinate-max, euclidean or weighted-max:w,...")
    ] = "coordinate-max",
) -> None:
    """Write a convergence, bound, rate or uniform-family report as CSV."""
    from clsmooth.bench.corpus import corpus_entries, provider_for
    from clsmooth.bench.report import (
        bound_csv,
        convergence_csv,
        growth_csv,
        print_bound,
        print_convergence,
        print_rates,
        print_uniform,
        rate_csv,
        uniform_csv,
    )
    from clsmooth.bench.runner import (
        bound_certificate,
        convergence_report,
        rate_fit,
        uniform_family_report,
    )
    from clsmooth.calculus.seminorm import SeminormSpec

    failed = False
    config = _config(ctx)
    _check_order(order, config)
    if kind not in ("convergence", "bound", "rate", "uniform"):
        console.print(f"[red]Unknown report kind:[/red] {kind!r}")
        raise typer.Exit(code=_USAGE_EXIT)
    try:
        q = SeminormSpec.parse(seminorm)
        n_list = _scales(scales) if scales else list(config.harness.scales)
        if fn:
            functions: list[tuple[str, JetProvider]] = [(f, _provider(f, config)) for f in fn]
        else:
            functions = [(e.name, provider_for(e)) for e in corpus_entries(dimension)]
        d = functions[0][1].dimension if kind != "uniform" else 1
        omega = load_box_union(domain) if domain else BoxUnion.cube(d, -2.0, 2.0)
        box = _single_box(compact) if compact else Box.cube(d, -1.0, 1.0)
        per_axis = config.harness.grid_points
        grid_points = per_axis if d == 1 else max(5, per_axis // 4)

        if kind == "convergence":
            if len(functions) != 1:
                raise PreconditionError("a convergence report takes exactly one --fn")
            name, provider = functions[0]
            with console.status("Tabulating errors ...", spinner="dots"):
                table = convergence_report(
                    provider, omega, order, box, n_list, q, grid_points=grid_points, name=name
                )
            convergence_csv(table).write(output)
            print_convergence(table, console)
        elif kind == "rate":
            fits = []
            with console.status("Fitting rates ...", spinner="dots"):
                for name, provider in functions:
                    table = convergence_report(
                        provider, omega, order, box, n_list, q, grid_points=grid_points, name=name
                    )
                    fits.append(rate_fit(table, config.harness.rate_threshold))
            rate_csv(fits).write(output)
            print_rates(fits, console)
        elif kind == "bound":
            pad = 2.0 / scale
            outer = Box(
                tuple(v - pad for v in box.lower), tuple(v + pad for v in box.upper)
            )
            sampling = config.sampling
            with console.status("Certifying the operator bound ...", spinner="dots"):
                certificate = bound_certificate(
                    functions,
                    omega,
                    order,
                    box,
                    outer,
                    scale,
                    q,
                    grid_points=grid_points,
                    samples=sampling.form_samples,
                    seed=sampling.seed,
                    h0_grid_step=sampling.h0_grid_step,
                    h0_points_per_axis=sampling.h0_points_per_axis,
                )
            bound_csv(certificate).write(output)
            failed = not certificate.passed
            growth_csv(certificate).write(output.with_name(output.stem + "_growth.csv"))
            print_bound(certificate, console)
        else:
            parameters = np.linspace(1.0, 2.0, config.harness.family_points)
            with console.status("Sweeping the sin(s·x1) family ...", spinner="dots"):
                uniform = uniform_family_report(
                    order,
                    n_list,
                    [float(s) for s in parameters],
                    box,
                    omega,
                    q,
                    grid_points=config.harness.grid_points,
                )
            uniform_csv(uniform).write(output)
            print_uniform(uniform, console)
    except ClsmoothError as e:
        raise _fail(e) from e

    console.print(f"Report -> {output}")
    if failed:
        console.print("[red]Operator bound violated[/red]")
        raise typer.Exit(code=1)


@app.command()
def selftest(
    ctx: typer.Context,
    suite: Annotated[
        list[str] | None,
        typer.Option("--suite", "-s", help="Run only this suite; repeatable"),
    ] = None,
    json_path: Annotated[
        Path | None, typer.Option("--json", help="Write the {suite, pass, max_violation} summary")
    ] = None,
    list_suites: Annotated[
        bool, typer.Option("--list", "-l", help="List the available suites")
    ] = False,
) -> None:
    """Run the property suites; the exit code reflects the verdict."""
    from clsmooth.bench.report import print_suites, save_summary
    from clsmooth.bench.suites import property_suites, suite_names

    config = _config(ctx)
    if list_suites:
        for name in suite_names():
            console.print(name)
        return
    unknown = [s for s in suite or [] if s not in suite_names()]
    if unknown:
        console.print(f"[red]Unknown suite(s):[/red] {', '.join(unknown)}")
        console.print(f"Available: {', '.join(suite_names())}")
        raise typer.Exit(code=_USAGE_EXIT)
    try:
        with console.status("Running property suites ...", spinner="dots"):
            results = property_suites(config, suite)
        if json_path is not None:
            save_summary(results, json_path)
    except ClsmoothError as e:
        raise _fail(e) from e

    print_suites(results, console)
    if not all(r.passed for r in results):
        raise typer.Exit(code=1)
