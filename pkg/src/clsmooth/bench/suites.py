"""Property suites: every machine-checkable claim about the operators, by name.

Each suite is a function of the configuration returning a ``SuiteResult``.
Tolerances come from ``config.tolerances`` and seeds from ``config.sampling``,
so two runs with the same configuration give the same verdicts.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

import numpy as np

from clsmooth.bench.corpus import corpus_entries, get_entry, provider_for
from clsmooth.bench.runner import (
    bound_certificate,
    box_grid,
    convergence_report,
    uniform_family_report,
)
from clsmooth.bench.types import SuiteResult
from clsmooth.calculus.forms import SymmetricForm, form_norm, polarize
from clsmooth.calculus.multiindex import MultiIndex
from clsmooth.calculus.polynomial import PolynomialMap
from clsmooth.calculus.seminorm import SeminormSpec, seminorm_cl
from clsmooth.config import ClsmoothConfig, default_config
from clsmooth.dugundji.report import dugundji_report, locality_gap
from clsmooth.dugundji.shells import DugundjiExtension, ShellStructure
from clsmooth.exceptions import ClsmoothError, PreconditionError
from clsmooth.extension.axis import AxisExtension
from clsmooth.extension.operators import (
    HalfspaceExtension,
    IntervalExtension,
    extend_corner,
    extend_cube,
    extend_halfspace,
    face_jump,
    lift_componentwise,
    projection_extension,
)
from clsmooth.geometry.boxes import Box, BoxUnion, ClosedSet, distance_to_closed
from clsmooth.geometry.exhaustion import default_exhaustion
from clsmooth.geometry.lattice import cube_bounds, cube_in_domain
from clsmooth.partition.lattice import PeriodicPartition
from clsmooth.partition.norm import h0_norm, smoothing_constant
from clsmooth.smoothing.family import FamilySchedule, interpolated_family
from clsmooth.smoothing.operators import build_sn, build_stilde, certify_support, cube_smoothing
from clsmooth.smoothing.provider import (
    ExpressionProvider,
    LinearCombinationProvider,
    RestrictedProvider,
    difference,
    provider_value,
)
from clsmooth.smoothing.smoothed import tensor_witness

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Sequence

    from clsmooth.calculus.series import MultiSeries
    from clsmooth.types import JetProvider

__all__ = [
    "SUITES",
    "cross_face_smoothness",
    "property_suites",
    "run_suite",
    "suite",
    "suite_names",
]

logger = logging.getLogger(__name__)

SUITES: dict[str, Callable[[ClsmoothConfig], SuiteResult]] = {}

_LISTED_FAILURES = 10


def suite(
    name: str,
) -> Callable[[Callable[[ClsmoothConfig], SuiteResult]], Callable[[ClsmoothConfig], SuiteResult]]:
    """Register a suite function under ``name``."""

    def register(
        fn: Callable[[ClsmoothConfig], SuiteResult],
    ) -> Callable[[ClsmoothConfig], SuiteResult]:
        if name in SUITES:
            raise PreconditionError(f"suite {name!r} is already registered")
        SUITES[name] = fn
        return fn

    return register


def suite_names() -> list[str]:
    return list(SUITES)


@dataclass
class _Tally:
    """Accumulates checks; the violation of a failed check is its excess over tolerance."""

    suite: str
    checks: int = 0
    worst: float = 0.0
    failures: list[str] = field(default_factory=list)

    def within(self, label: str, measured: float, tolerance: float) -> None:
        self.checks += 1
        if measured <= tolerance:
            return
        excess = measured - tolerance
        self.worst = max(self.worst, excess if math.isfinite(excess) else math.inf)
        self.failures.append(f"{label}: {measured:.6g} > {tolerance:.3g}")

    def require(self, label: str, ok: bool) -> None:
        self.checks += 1
        if not ok:
            self.worst = max(self.worst, 1.0)
            self.failures.append(label)

    def result(self) -> SuiteResult:
        return SuiteResult(
            suite=self.suite,
            passed=not self.failures,
            max_violation=self.worst,
            checks=self.checks,
            details=tuple(self.failures[:_LISTED_FAILURES]),
        )


def _cube(d: int, lo: float, hi: float) -> Box:
    return Box.cube(d, lo, hi)


def _window(box: Box) -> BoxUnion:
    return BoxUnion((box,), open=False)


def _grid_per_axis(config: ClsmoothConfig, d: int) -> int:
    """The harness grid for d = 1, a coarser one in higher dimension."""
    points = config.harness.grid_points
    return points if d == 1 else max(5, points // 4)


def _max_gap(a: JetProvider, b: JetProvider, points: Iterable[Sequence[float]]) -> float:
    worst = 0.0
    for x in points:
        worst = max(worst, float(np.max(np.abs(provider_value(a, x) - provider_value(b, x)))))
    return worst


# -- bump partition ------------------------------------------------------------


@suite("partition-identities")
def partition_identities(config: ClsmoothConfig) -> SuiteResult:
    """Σ_z h_z = 1 and Σ_z ∂^α h_z = 0 for 1 <= |α| <= 3 at seeded points in [-5, 5]^d.

    The derivative order is capped by ``jets.max_order``.
    """
    tally = _Tally("partition-identities")
    tol = config.tolerances
    rng = np.random.default_rng(config.sampling.seed)
    max_order = config.jets.max_order
    order = min(3, max_order)
    for d in (1, 2, 3):
        partition = PeriodicPartition(d, max_order)
        points = rng.uniform(-5.0, 5.0, size=(config.harness.random_points, d))
        sum_error = 0.0
        derivative_error = 0.0
        for x in points:
            total: MultiSeries | None = None
            for z in partition.active(x):
                s = partition.series(z, x, order)
                total = s if total is None else total + s
            assert total is not None
            table = np.array(total.derivative_table())
            origin = (0,) * d
            sum_error = max(sum_error, abs(float(table[origin]) - 1.0))
            table[origin] = 0.0
            derivative_error = max(derivative_error, float(np.max(np.abs(table))))
        tally.within(f"d={d} partition sum", sum_error, tol.partition_sum)
        tally.within(f"d={d} derivative sums", derivative_error, tol.partition_derivative)
    return tally.result()


# -- domains -------------------------------------------------------------------

_LIPSCHITZ_SETS: tuple[tuple[ClosedSet, tuple[float, float]], ...] = (
    (ClosedSet(BoxUnion.cube(1, 0.0, 1.0, open=False), ((2.5,),)), (-2.0, 4.0)),
    (
        ClosedSet(
            BoxUnion((Box((0.0, 0.0), (1.0, 1.0)), Box((1.5, -0.5), (2.0, 0.5))), open=False),
            ((3.0, 3.0), (-1.0, 2.0)),
        ),
        (-2.0, 4.0),
    ),
)

_ORACLE_DOMAINS: tuple[BoxUnion, ...] = (
    BoxUnion((Box((0.0,), (1.25,)), Box((0.75,), (2.0,)), Box((2.0,), (3.0,)))),
    BoxUnion(
        (
            Box((0.0, 0.0), (1.25, 1.0)),
            Box((0.75, 0.0), (2.0, 1.0)),
            Box((0.0, 1.0), (1.0, 2.0)),
        )
    ),
)


def _sampled_cube_inside(z: Sequence[int], n: int, omega: BoxUnion, per_axis: int) -> bool:
    """Membership of sample points of the closed cube, box bounds inside it included.

    Ω is constant on the cells cut out by its bounds, and the complement is
    closed, so an escaping cell always has an escaping corner among the samples.
    """
    lower, upper = cube_bounds(z, n)
    axes = []
    for i, (lo, hi) in enumerate(zip(lower, upper, strict=True)):
        a, b = float(lo), float(hi)
        cuts = [c for box in omega.boxes for c in (box.lower[i], box.upper[i]) if a <= c <= b]
        axes.append(sorted({*np.linspace(a, b, per_axis).tolist(), *cuts}))
    return all(omega.contains(p) for p in itertools.product(*axes))


@suite("domains")
def domains(config: ClsmoothConfig) -> SuiteResult:
    """d_Y is 1-Lipschitz and vanishes on Y; exact cube containment agrees with sampling."""
    tally = _Tally("domains")
    rng = np.random.default_rng(config.sampling.seed)
    count = config.harness.random_points
    for closed, (lo, hi) in _LIPSCHITZ_SETS:
        d = closed.dimension
        xs = rng.uniform(lo, hi, size=(count, d))
        ys = np.vstack(
            [
                rng.uniform(lo, hi, size=(count // 2, d)),
                xs[count // 2 :] + rng.normal(scale=0.05, size=(count - count // 2, d)),
            ]
        )
        worst = 0.0
        for x, y in zip(xs.tolist(), ys.tolist(), strict=True):
            gap = abs(distance_to_closed(closed, x) - distance_to_closed(closed, y))
            worst = max(worst, gap - math.dist(x, y))
        tally.within(f"d={d} Lipschitz excess", worst, config.tolerances.lipschitz)
        on_y = max(distance_to_closed(closed, p) for p in closed.sample(5))
        tally.within(f"d={d} distance on Y", on_y, 0.0)

    outcomes: set[bool] = set()
    per_domain = max(1, count // len(_ORACLE_DOMAINS))
    for omega in _ORACLE_DOMAINS:
        d = omega.dimension
        top = math.ceil(max(b.upper[0] for b in omega.boxes))
        mismatches = []
        for _ in range(per_domain):
            n = int(rng.integers(1, 9))
            z = tuple(int(v) for v in rng.integers(-1, top * n + 2, size=d))
            exact = cube_in_domain(z, n, omega)
            outcomes.add(exact)
            if exact != _sampled_cube_inside(z, n, omega, 9):
                mismatches.append((z, n))
        tally.require(
            f"d={d} cube containment disagrees with sampling at {mismatches[:3]}",
            not mismatches,
        )
    tally.require("cube cases cover both outcomes", outcomes == {True, False})
    return tally.result()


# -- smoothing -----------------------------------------------------------------

_EXACT_POLYNOMIALS: dict[tuple[int, int], str] = {
    (0, 1): "2.5",
    (0, 2): "-1.25",
    (1, 1): "1 - 3*x1",
    (1, 2): "1 + 2*x1 - x2",
    (2, 1): "x1^2 - x1 + 0.25",
    (2, 2): "x1^2 - 3*x1*x2 + x2 - 1",
}


@suite("polynomial-exactness")
def polynomial_exactness(config: ClsmoothConfig) -> SuiteResult:
    """S̃_n reproduces polynomials of degree <= ℓ on K with dist(K, ∂Ω) >= 2/n."""
    tally = _Tally("polynomial-exactness")
    q = SeminormSpec()
    n = 8
    for (ell, d), text in _EXACT_POLYNOMIALS.items():
        provider = ExpressionProvider.from_text(text, d)
        compact = _cube(d, -0.5, 0.5)
        omega = BoxUnion.cube(d, -1.0, 1.0)
        smoothed = build_stilde(provider, ell, n, _window(compact), omega)
        points = box_grid(compact, 9)
        error = seminorm_cl(difference(provider, smoothed), points, ell, q)
        tally.within(f"ℓ={ell} d={d} {text}", error, config.tolerances.polynomial_exactness)
    return tally.result()


@suite("convergence")
def convergence(config: ClsmoothConfig) -> SuiteResult:
    """Corpus errors decrease over the harness scales; the sin(s·x1) family uniformly too."""
    tally = _Tally("convergence")
    order = 1
    scales = list(config.harness.scales)
    for entry in corpus_entries():
        d = entry.dimension
        table = convergence_report(
            provider_for(entry),
            BoxUnion.cube(d, -2.0, 2.0),
            order,
            _cube(d, -1.0, 1.0),
            scales,
            grid_points=_grid_per_axis(config, d),
            name=entry.name,
        )
        if entry.degree is not None and entry.degree <= order:
            worst = max(max(row.errors) for row in table.rows)
            tally.within(f"{entry.name} exact", worst, config.tolerances.polynomial_exactness)
        else:
            tally.require(
                f"{entry.name}: C^{order} error not decreasing at rows {table.non_monotone}",
                table.strictly_decreasing,
            )
    parameters = np.linspace(1.0, 2.0, config.harness.family_points)
    family = uniform_family_report(
        order,
        scales,
        [float(s) for s in parameters],
        _cube(1, -1.0, 1.0),
        BoxUnion.cube(1, -2.0, 2.0),
        grid_points=config.harness.grid_points,
    )
    tally.require("sin(s·x1) family sup error not decreasing", family.strictly_decreasing)
    return tally.result()


@suite("operator-bound")
def operator_bound(config: ClsmoothConfig) -> SuiteResult:
    """‖S̃_nγ‖ <= C‖γ‖ for the one-dimensional corpus, with ratio one for constants."""
    tally = _Tally("operator-bound")
    sampling = config.sampling
    corpus = [(e.name, provider_for(e)) for e in corpus_entries(1)]
    certificate = bound_certificate(
        corpus,
        BoxUnion.cube(1, -2.0, 2.0),
        1,
        _cube(1, -0.5, 0.5),
        _cube(1, -1.0, 1.0),
        8,
        grid_points=_grid_per_axis(config, 1),
        samples=sampling.form_samples,
        seed=sampling.seed,
        h0_grid_step=sampling.h0_grid_step,
        h0_points_per_axis=sampling.h0_points_per_axis,
    )
    for row in certificate.rows:
        tally.within(f"{row.function} ratio", row.ratio, certificate.constant)
        tally.within(f"{row.function} error ratio", row.error_ratio, certificate.error_constant)
    for row in certificate.rows:
        if row.function == "constant":
            tally.within("constant ratio", abs(row.ratio - 1.0), config.tolerances.sup_ratio)
    for growth in certificate.growth:
        expected = 1.0 + growth.factor * growth.h0
        tally.within(f"growth ℓ={growth.order}", abs(growth.constant - expected), 0.0)
    return tally.result()


@suite("support")
def support(config: ClsmoothConfig) -> SuiteResult:
    """Exact support certificates for the stages S_j and for compactly supported γ."""
    tally = _Tally("support")
    q = SeminormSpec()
    sampling = config.sampling
    samples, seed = sampling.form_samples, sampling.seed
    cases = [
        (
            BoxUnion((Box((0.0,), (1.0,)), Box((1.5,), (2.5,))), open=True),
            ExpressionProvider.from_text("sin(3*x1) + x1", 1),
            3,
        ),
        (BoxUnion.cube(2, 0.0, 1.0), ExpressionProvider.from_text("cos(x1 - x2)", 2), 2),
    ]
    for omega, provider, depth in cases:
        d = provider.dimension
        h0 = h0_norm(
            d,
            1,
            seed=sampling.seed,
            grid_step=sampling.h0_grid_step,
            points_per_axis=sampling.h0_points_per_axis,
        )
        constant = smoothing_constant(d, 1, h0.value)
        depth = min(depth, config.exhaustion.max_depth)
        exhaustion = default_exhaustion(
            omega,
            depth,
            initial_radius=config.exhaustion.initial_radius,
            max_depth=config.exhaustion.max_depth,
        )
        restricted = RestrictedProvider(provider, exhaustion.compact(1))
        for j in range(1, depth + 1):
            stage = build_sn(provider, 1, exhaustion, j)
            certificate = certify_support(stage, exhaustion.compact(j + 1))
            tally.require(
                f"d={d} S_{j}: {len(certificate.violations)} cube(s) leave K_{j + 1}",
                certificate.ok and certificate.checked > 0,
            )
            points = [
                p
                for box in exhaustion.compact(j).boxes
                for p in box_grid(box, _grid_per_axis(config, d))
            ]
            reference = build_stilde(
                provider, 1, exhaustion.scale(j), exhaustion.compact(j), omega, strict=False
            )
            tally.within(
                f"d={d} S_{j} against S̃_m",
                _max_gap(stage, reference, points),
                config.tolerances.stage_agreement,
            )
            top = seminorm_cl(stage, points, 1, q, kind="gateaux", samples=samples, seed=seed)
            outer = [
                p
                for box in exhaustion.compact(j + 1).boxes
                for p in box_grid(box, _grid_per_axis(config, d))
            ]
            bottom = seminorm_cl(
                provider, outer, 1, q, kind="gateaux", samples=samples, seed=seed
            )
            tally.within(f"d={d} S_{j} operator bound", top, constant * bottom)
            supported = build_sn(restricted, 1, exhaustion, j)
            inside = certify_support(supported, exhaustion.compact(2))
            tally.require(
                f"d={d} S_{j}(γ·1_K1): {len(inside.violations)} cube(s) leave K_2", inside.ok
            )
    return tally.result()


@suite("tensor-witness")
def tensor_witness_suite(config: ClsmoothConfig) -> SuiteResult:
    """Rank factorizations reconstruct S̃_nγ, with r <= m and r = 1 for rank-one γ."""
    tally = _Tally("tensor-witness")
    for name in ("sine", "rank-one", "full-rank", "full-rank-2d"):
        entry = get_entry(name)
        d = entry.dimension
        compact = _cube(d, -1.0, 1.0)
        smoothed = build_stilde(
            provider_for(entry),
            1,
            8,
            _window(compact),
            BoxUnion.cube(d, -2.0, 2.0),
        )
        witness = tensor_witness(smoothed)
        points = box_grid(compact, 100 if d == 1 else 10)
        error = max(
            float(np.max(np.abs(witness.value(x) - smoothed.value(x)))) for x in points
        )
        tally.within(f"{name} reconstruction", error, config.tolerances.tensor_reconstruction)
        tally.require(f"{name}: rank {witness.rank} > m", witness.rank <= entry.target_dim)
        if entry.family == "rank-one":
            tally.require(f"{name}: rank {witness.rank} != 1", witness.rank == 1)
    return tally.result()


@suite("interpolated-family")
def interpolated_family_suite(config: ClsmoothConfig) -> SuiteResult:
    """S_{t_j} is H_j term for term, constant on both collars, and converges as t -> 0."""
    tally = _Tally("interpolated-family")
    schedule = FamilySchedule(config.smoothing.first_scale, config.smoothing.collar_epsilon)
    provider = ExpressionProvider.from_text("sin(x1)", 1)
    compact = _cube(1, -1.0, 1.0)
    window = _window(compact)
    omega = BoxUnion.cube(1, -2.0, 2.0)
    eps = schedule.epsilon

    def family(t: float) -> dict[str, object]:
        return interpolated_family(
            provider, 1, window, t, omega=omega, schedule=schedule
        ).to_dict()

    stages = {
        j: build_stilde(provider, 1, schedule.scale(j), window, omega).to_dict()
        for j in range(1, 5)
    }
    for j in range(1, 4):
        tally.require(f"S_t at t_{j} differs from H_{j}", family(schedule.time(j)) == stages[j])
    for j in range(1, 3):
        hi, lo = schedule.time(j), schedule.time(j + 1)
        for k in range(5):
            upper = lo + (1.0 - eps * k / 6.0) * (hi - lo)
            tally.require(f"upper collar of stage {j} at t={upper!r}", family(upper) == stages[j])
            lower = lo + eps * (k + 1) / 6.0 * (hi - lo)
            tally.require(
                f"lower collar of stage {j} at t={lower!r}", family(lower) == stages[j + 1]
            )
    q = SeminormSpec()
    points = box_grid(compact, config.harness.grid_points)
    errors = []
    for j in range(1, 6):
        s_t = interpolated_family(
            provider, 1, window, schedule.time(j), omega=omega, schedule=schedule
        )
        errors.append(seminorm_cl(difference(provider, s_t), points, 1, q))
    tally.require(
        f"S_t errors not decreasing: {errors}", all(b < a for a, b in zip(errors, errors[1:]))
    )
    reference = build_stilde(provider, 1, 32, window, omega)
    tally.within(
        "tail error against n=32",
        errors[-1],
        seminorm_cl(difference(provider, reference), points, 1, q),
    )
    return tally.result()


@suite("linearity")
def linearity(config: ClsmoothConfig) -> SuiteResult:
    """S̃_n, cube smoothing and the extensions are linear; lifting respects rank one."""
    tally = _Tally("linearity")
    tol = config.tolerances
    a, b = 2.0, -3.0
    gamma = provider_for(get_entry("cosine-2d"))
    eta = provider_for(get_entry("gaussian-2d"))
    combined = LinearCombinationProvider(((a, gamma), (b, eta)))

    compact = _cube(2, -1.0, 1.0)
    window = _window(compact)
    omega = BoxUnion.cube(2, -2.0, 2.0)
    points = box_grid(compact, _grid_per_axis(config, 2))
    left = build_stilde(combined, 1, 8, window, omega)
    right = build_stilde(gamma, 1, 8, window, omega).combine(
        build_stilde(eta, 1, 8, window, omega), a, b
    )
    tally.within("S̃_8", _max_gap(left, right, points), tol.linearity)

    unit = box_grid(_cube(2, 0.0, 1.0), _grid_per_axis(config, 2))
    left = cube_smoothing(combined, 1, 8)
    right = cube_smoothing(gamma, 1, 8).combine(cube_smoothing(eta, 1, 8), a, b)
    tally.within("cube smoothing", _max_gap(left, right, unit), tol.linearity)

    rng = np.random.default_rng(config.sampling.seed)
    ambient = [tuple(float(v) for v in p) for p in rng.uniform(-0.5, 1.5, size=(100, 2))]
    for name in ("halfspace", "corner", "cube"):
        build = {"halfspace": extend_halfspace, "corner": extend_corner, "cube": extend_cube}[name]
        left_ext = build(combined, 2)
        right_ext = LinearCombinationProvider(((a, build(gamma, 2)), (b, build(eta, 2))))
        tally.within(name, _max_gap(left_ext, right_ext, ambient), tol.extension_linearity)

    sine = ExpressionProvider.from_text("sin(x1)", 1)
    stacked = provider_for(get_entry("rank-one"))
    lifted = lift_componentwise("cube", stacked, 2)
    scalar = extend_cube(sine, 2)
    line = [(float(t),) for t in np.linspace(-0.5, 1.5, 101)]
    vector = np.array([1.0, 2.0, -1.0])
    worst = max(
        float(np.max(np.abs(provider_value(lifted, x) - vector * provider_value(scalar, x)[0])))
        for x in line
    )
    tally.within("rank-one lifting", worst, tol.extension_linearity)
    return tally.result()


# -- extension -----------------------------------------------------------------


@suite("extension-restriction")
def extension_restriction(config: ClsmoothConfig) -> SuiteResult:
    """Every extension operator reproduces γ on its source region."""
    tally = _Tally("extension-restriction")
    tol = config.tolerances.restriction
    for entry in corpus_entries():
        d = entry.dimension
        provider = provider_for(entry)
        per_axis = _grid_per_axis(config, d)
        unit = box_grid(_cube(d, 0.0, 1.0), per_axis)
        checks = {
            "halfspace": extend_halfspace(provider, 2),
            "corner": extend_corner(provider, 2, axes=d),
            "cube": extend_cube(provider, 2),
        }
        for name, extended in checks.items():
            tally.within(f"{entry.name} {name}", extended.restriction_error(unit), tol)
        sliced = [(*x, 0.5) for x in box_grid(_cube(d, -1.0, 1.0), per_axis)]
        projected = projection_extension(provider, (0.5,))
        tally.within(f"{entry.name} projection", projected.restriction_error(sliced), tol)
        shells = ShellStructure(
            ClosedSet(BoxUnion.cube(d, 0.0, 1.0, open=False)),
            config.dugundji.n_min,
            config.dugundji.n_max,
            config.dugundji.anchor_refinement,
        )
        metric = DugundjiExtension(provider, shells)
        tally.within(f"{entry.name} dugundji", _max_gap(metric, provider, unit), tol)
        if entry.target_dim > 1:
            lifted = lift_componentwise("cube", provider, 2)
            tally.within(f"{entry.name} lifted", _max_gap(lifted, provider, unit), tol)
    return tally.result()


def _face_points(d: int) -> list[tuple[float, ...]]:
    if d == 1:
        return [(0.0,)]
    return [(0.0, y) for y in (0.25, 0.5, 0.75)]


@suite("cross-face-smoothness")
def cross_face_smoothness(
    config: ClsmoothConfig, axis_extension: AxisExtension | None = None
) -> SuiteResult:
    """One-sided jets agree across the extended faces of the half-space and the cube.

    Passing a modified ``axis_extension`` (for instance a perturbed weight)
    runs the same checks against it.
    """
    tally = _Tally("cross-face-smoothness")
    ext = axis_extension or AxisExtension.build(2, tuple(config.extension.nodes) or None)
    order = ext.order
    for entry in corpus_entries():
        provider = provider_for(entry)
        halfspace = HalfspaceExtension(provider, 0, 0.0, 1, ext)
        glued = IntervalExtension(provider, 0, 0.0, 1.0, ext)
        for x in _face_points(entry.dimension):
            tally.within(
                f"{entry.name} halfspace at {x}",
                face_jump(halfspace, 0, 0.0, x, order),
                config.tolerances.cross_face,
            )
            tally.within(
                f"{entry.name} cube upper face at {x}",
                face_jump(glued, 0, 1.0, x, order, side=-1),
                config.tolerances.cross_face,
            )
    return tally.result()


@suite("vandermonde")
def vandermonde_weights(config: ClsmoothConfig) -> SuiteResult:
    """Σ a_k (-b_k)^j = 1 for j <= ℓ <= 4; ℓ = 1 gives (3, -2)."""
    tally = _Tally("vandermonde")
    tol = config.tolerances
    for order in range(5):
        ext = AxisExtension.build(order)
        tally.within(f"ℓ={order} residual", float(np.max(ext.residuals())), tol.vandermonde)
    weights = AxisExtension.build(1).weights
    error = float(np.max(np.abs(np.asarray(weights) - np.array([3.0, -2.0]))))
    tally.within("ℓ=1 weights (3, -2)", error, tol.vandermonde_exact)
    return tally.result()


@suite("cube-smoothing")
def cube_smoothing_suite(config: ClsmoothConfig) -> SuiteResult:
    """Cube smoothing reproduces low-degree polynomials; the glued axis order is immaterial."""
    tally = _Tally("cube-smoothing")
    tol = config.tolerances
    q = SeminormSpec()
    for text, d, order in (("x1 + 2*x2 - 1", 2, 1), ("x1^2 - x1", 1, 2)):
        provider = ExpressionProvider.from_text(text, d)
        smoothed = cube_smoothing(provider, order, 16)
        points = box_grid(_cube(d, 0.0, 1.0), _grid_per_axis(config, d))
        error = seminorm_cl(difference(provider, smoothed), points, order, q)
        tally.within(f"{text} reproduced", error, tol.cube_polynomial)
    exponential = ExpressionProvider.from_text("exp(x1)", 1)
    unit = box_grid(_cube(1, 0.0, 1.0), config.harness.grid_points)
    errors = [
        seminorm_cl(difference(exponential, cube_smoothing(exponential, 1, n)), unit, 1, q)
        for n in (4, 8, 16)
    ]
    tally.require(
        f"cube smoothing errors not decreasing: {errors}",
        all(b < a for a, b in zip(errors, errors[1:])),
    )
    provider = provider_for(get_entry("gaussian-2d"))
    first = extend_cube(provider, 2, axis_order=(0, 1))
    second = extend_cube(provider, 2, axis_order=(1, 0))
    inside = box_grid(Box((0.05, 0.05), (0.95, 0.95)), _grid_per_axis(config, 2))
    tally.within("axis order", _max_gap(first, second, inside), tol.axis_order)
    return tally.result()


def _jittered_grid(box: Box, per_axis: int, rng: np.random.Generator) -> list[tuple[float, ...]]:
    grid = np.array(box_grid(box, per_axis))
    step = (np.array(box.upper) - np.array(box.lower)) / (per_axis - 1)
    shifted = grid + rng.uniform(-0.5, 0.5, size=grid.shape) * step
    clipped = np.clip(shifted, box.lower, box.upper)
    return [tuple(float(v) for v in p) for p in clipped]


@suite("extension-bound")
def extension_bound(config: ClsmoothConfig) -> SuiteResult:
    """Sampled operator norm of the cube extension is stable under resampling."""
    tally = _Tally("extension-bound")
    q = SeminormSpec()
    rng = np.random.default_rng(config.sampling.seed)
    source_box, ambient_box = _cube(1, 0.0, 1.0), _cube(1, -0.5, 1.5)
    per_axis = 401
    fixed = (box_grid(source_box, per_axis), box_grid(ambient_box, per_axis))
    jittered = (
        _jittered_grid(source_box, per_axis, rng),
        _jittered_grid(ambient_box, per_axis, rng),
    )
    bounds = []
    for source_points, ambient_points in (fixed, jittered):
        ratio = 0.0
        for entry in corpus_entries(1):
            provider = provider_for(entry)
            extended = extend_cube(provider, 1)
            bottom = seminorm_cl(provider, source_points, 1, q)
            if bottom > 0.0:
                ratio = max(ratio, seminorm_cl(extended, ambient_points, 1, q) / bottom)
        bounds.append(ratio)
    spread = abs(bounds[0] - bounds[1]) / bounds[0]
    tally.within("operator bound spread", spread, config.tolerances.operator_bound_spread)
    logger.info("cube extension C^1 operator bound %r (resampled %r)", *bounds)
    return tally.result()


# -- dugundji ------------------------------------------------------------------


@suite("dugundji")
def dugundji(config: ClsmoothConfig) -> SuiteResult:
    """Weights, hull, sup ratio, anchors, continuity, locality and linearity."""
    tally = _Tally("dugundji")
    tol = config.tolerances
    cases = [
        (
            ClosedSet(BoxUnion.cube(1, 0.0, 1.0, open=False), ((2.5,),)),
            ExpressionProvider.from_text("x1", 1),
            ExpressionProvider.from_text("sin(3*x1)", 1),
            _cube(1, -1.0, 3.0),
            61,
        ),
        (
            ClosedSet(BoxUnion.cube(2, 0.0, 1.0, open=False)),
            ExpressionProvider.from_text("sin(x1); cos(x2)", 2),
            ExpressionProvider.from_text("x1*x2; x1 - x2", 2),
            _cube(2, -1.0, 2.0),
            13,
        ),
    ]
    dug = config.dugundji
    for closed, gamma, eta, window, grid in cases:
        d = closed.dimension
        shells = ShellStructure(closed, dug.n_min, dug.n_max, dug.anchor_refinement)
        report = dugundji_report(gamma, shells, window, grid, seed=config.sampling.seed)
        tally.within(f"d={d} restriction", report.restriction_error, tol.restriction)
        tally.within(f"d={d} weight sum", report.weight_sum_error, tol.weight_sum)
        tally.require(f"d={d} negative weight {report.min_weight!r}", report.min_weight >= 0.0)
        tally.within(f"d={d} sup ratio", report.sup_ratio - 1.0, tol.sup_ratio)
        tally.require(f"d={d} hull containment", report.hull_ok)
        tally.require(
            f"d={d} {report.anchor_violations} anchor(s) violate the shell bound",
            report.anchor_violations == 0,
        )
        tally.require(f"d={d} continuity path does not settle", report.continuity_trend_ok)
        off_y = [row.query for row in report.rows if row.shell is not None]
        for x in off_y[:: max(1, len(off_y) // 8)]:
            tally.within(f"d={d} locality at {x}", locality_gap(gamma, shells, x), 0.0)
        a, b = 2.0, -3.0
        combined = DugundjiExtension(LinearCombinationProvider(((a, gamma), (b, eta))), shells)
        separate = LinearCombinationProvider(
            ((a, DugundjiExtension(gamma, shells)), (b, DugundjiExtension(eta, shells)))
        )
        points = box_grid(window, grid)
        tally.within(f"d={d} linearity", _max_gap(combined, separate, points), tol.linearity)
    return tally.result()


# -- calculus ------------------------------------------------------------------


@suite("calculus")
def calculus(config: ClsmoothConfig) -> SuiteResult:
    """Polarization identities, diagonal norms and jets against central finite differences."""
    tally = _Tally("calculus")
    tol = config.tolerances
    cubic = PolynomialMap.from_terms(2, 3, {MultiIndex.of(2, 1): 1.0})
    form = polarize(cubic)
    e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    tally.within(
        "β(e1, e1, e2) = 1/3", abs(float(form(e1, e1, e2)[0]) - 1.0 / 3.0), tol.polarization
    )
    rng = np.random.default_rng(config.sampling.seed)
    quartic = PolynomialMap.from_terms(
        3,
        4,
        {
            MultiIndex.of(4, 0, 0): 1.0,
            MultiIndex.of(1, 2, 1): -2.0,
            MultiIndex.of(0, 1, 3): 0.5,
            MultiIndex.of(2, 2, 0): 3.0,
        },
    )
    diagonal = polarize(quartic).diagonal()
    samples = rng.uniform(-1.0, 1.0, size=(50, 3))
    error = float(np.max(np.abs(diagonal.evaluate_many(samples) - quartic.evaluate_many(samples))))
    tally.within("polarized diagonal", error, tol.polarization)

    q = SeminormSpec()
    seed, form_samples = config.sampling.seed, config.sampling.form_samples
    for j in range(1, 5):
        for d in range(1, 4):
            beta = SymmetricForm.symmetrize(rng.normal(size=(d,) * j + (2,)))
            diag = beta.diagonal()
            recovered = polarize(diag, j)
            gap = float(np.max(np.abs(recovered.tensor - beta.tensor)))
            tally.within(f"j={j} d={d} polarized form", gap, tol.polarization)
            excess = form_norm(diag, q, samples=form_samples, seed=seed) - form_norm(
                beta, q, samples=form_samples, seed=seed
            )
            tally.within(f"j={j} d={d} diagonal norm excess", excess, 0.0)

    h = config.harness.fd_step
    for entry in corpus_entries():
        provider = provider_for(entry)
        d = entry.dimension
        points = rng.uniform(-1.0, 1.0, size=(config.harness.expr_points, d))
        tally.within(
            f"{entry.name} jet against differences",
            _fd_gap(provider, points, h),
            tol.expr_finite_difference,
        )
    smoothed = build_stilde(
        provider_for(get_entry("sine")),
        1,
        8,
        BoxUnion.cube(1, -1.0, 1.0, open=False),
        BoxUnion.cube(1, -2.0, 2.0),
    )
    inner = rng.uniform(-0.9, 0.9, size=(config.harness.expr_points, 1))
    tally.within(
        "smoothed jet against differences", _fd_gap(smoothed, inner, h), tol.jet_finite_difference
    )
    return tally.result()


def _fd_gap(provider: JetProvider, points: np.ndarray, h: float) -> float:
    """Largest relative gap between first partials and central differences."""
    d = provider.dimension
    worst = 0.0
    for x in points:
        jet = provider.jet(tuple(float(v) for v in x), 1)
        for axis in range(d):
            step = np.zeros(d)
            step[axis] = h
            forward = provider_value(provider, tuple(float(v) for v in x + step))
            backward = provider_value(provider, tuple(float(v) for v in x - step))
            estimate = (forward - backward) / (2.0 * h)
            exact = jet[MultiIndex.unit(d, axis)]
            gap = np.abs(estimate - exact) / np.maximum(1.0, np.abs(exact))
            worst = max(worst, float(np.max(gap)))
    return worst


# -- reproducibility -----------------------------------------------------------

_SEEDED_SUITES = ("partition-identities", "domains", "calculus", "extension-bound")


@suite("seed-stability")
def seed_stability(config: ClsmoothConfig) -> SuiteResult:
    """Seeded suites keep their verdicts under another seed; ‖h_0‖ keeps three digits."""
    tally = _Tally("seed-stability")
    sampling = config.sampling
    shifted = replace(config, sampling=replace(sampling, seed=sampling.seed + 1))
    for name in _SEEDED_SUITES:
        first, second = run_suite(name, config), run_suite(name, shifted)
        tally.require(
            f"{name}: verdict {first.passed} becomes {second.passed} under seed "
            f"{sampling.seed + 1}",
            first.passed == second.passed,
        )
    for order in range(3):
        a, b = (
            h0_norm(
                1,
                order,
                seed=seed,
                grid_step=sampling.h0_grid_step,
                points_per_axis=sampling.h0_points_per_axis,
            ).value
            for seed in (sampling.seed, sampling.seed + 1)
        )
        tally.within(
            f"‖h_0‖ ℓ={order} relative seed spread",
            abs(a - b) / a,
            config.tolerances.h0_seed_spread,
        )
    return tally.result()


# -- runner --------------------------------------------------------------------


def run_suite(name: str, config: ClsmoothConfig | None = None) -> SuiteResult:
    """Run one suite; an operator error becomes a failed result naming it."""
    config = config or default_config()
    try:
        fn = SUITES[name]
    except KeyError as e:
        raise PreconditionError(f"unknown suite {name!r}. Available: {suite_names()}") from e
    logger.info("Running suite %s", name)
    try:
        result = fn(config)
    except ClsmoothError as e:
        logger.warning("Suite %s raised: %s", name, e)
        return SuiteResult(name, False, math.inf, 0, (f"{type(e).__name__}: {e}",))
    verdict = "pass" if result.passed else "FAIL"
    logger.info("Suite %s: %s (%d checks)", name, verdict, result.checks)
    return result


def property_suites(
    config: ClsmoothConfig | None = None, names: Sequence[str] | None = None
) -> list[SuiteResult]:
    """Run the named suites (all of them by default) in registration order.

    Raises:
        PreconditionError: If a name is not a registered suite.
    """
    config = config or default_config()
    selected = list(SUITES) if not names else list(dict.fromkeys(names))
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise PreconditionError(f"unknown suite(s) {unknown}. Available: {suite_names()}")
    return [run_suite(name, config) for name in selected]
