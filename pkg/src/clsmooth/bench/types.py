"""Harness data contracts: frozen dataclasses for corpus entries and reports."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "BoundCertificate",
    "BoundRow",
    "ConvergenceRow",
    "ConvergenceTable",
    "CorpusEntry",
    "GrowthRow",
    "RateFit",
    "SuiteResult",
    "UniformFamilyReport",
    "UniformRow",
]


@dataclass(frozen=True)
class CorpusEntry:
    """A named test function with exact jets."""

    name: str
    expression: str  # "e1; e2; ..." one expression per component
    dimension: int
    target_dim: int
    family: str  # polynomial | trigonometric | exponential | rank-one | full-rank
    degree: int | None = None  # polynomial degree, None for non-polynomials


@dataclass(frozen=True)
class ConvergenceRow:
    n: int  # scale for "stilde", stage index for "stages"
    errors: tuple[float, ...]  # ‖γ - Sγ‖_{C^j,K,q}, j = 0..ℓ
    seconds: float = 0.0  # wall time, console only


@dataclass(frozen=True)
class ConvergenceTable:
    function: str
    operator: str  # stilde | stages
    order: int
    compact: tuple[tuple[float, float], ...]
    rows: tuple[ConvergenceRow, ...]
    non_monotone: tuple[int, ...] = ()  # row indices whose C^ℓ error did not decrease

    @property
    def strictly_decreasing(self) -> bool:
        return not self.non_monotone


@dataclass(frozen=True)
class BoundRow:
    function: str
    smoothed_norm: float  # ‖S̃_nγ‖_{C^ℓ,K,q}
    source_norm: float  # ‖γ‖_{C^ℓ,L,q}
    ratio: float
    error_norm: float  # ‖γ - S̃_nγ‖_{C^ℓ,K,q}
    error_ratio: float


@dataclass(frozen=True)
class GrowthRow:
    order: int
    h0: float
    factor: float  # (ℓ+1) 2^{d+1} (2ℓ)^ℓ
    constant: float


@dataclass(frozen=True)
class BoundCertificate:
    """Ratios against C = 1 + (ℓ+1)2^{d+1}(2ℓ)^ℓ‖h_0‖_{C^ℓ}."""

    dimension: int
    order: int
    scale: int
    h0: float
    h0_seed: int
    h0_grid: str
    h0_definition: str
    constant: float
    rows: tuple[BoundRow, ...]
    growth: tuple[GrowthRow, ...] = ()

    @property
    def error_constant(self) -> float:
        return self.constant - 1.0

    @property
    def violations(self) -> tuple[str, ...]:
        return tuple(r.function for r in self.rows if r.ratio > self.constant)

    @property
    def error_violations(self) -> tuple[str, ...]:
        return tuple(r.function for r in self.rows if r.error_ratio > self.error_constant)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.error_violations


@dataclass(frozen=True)
class RateFit:
    """Least-squares slope of log-error against log-n (reported, not asserted)."""

    function: str
    slope: float
    intercept: float
    points: int
    threshold: float

    @property
    def below_threshold(self) -> bool:
        return self.slope <= self.threshold


@dataclass(frozen=True)
class UniformRow:
    n: int
    sup_error: float
    worst_parameter: float


@dataclass(frozen=True)
class UniformFamilyReport:
    """sup over s of ‖γ_s - S̃_nγ_s‖_{C^ℓ,K} for γ_s = sin(s·x1)."""

    order: int
    parameters: tuple[float, ...]
    rows: tuple[UniformRow, ...]

    @property
    def strictly_decreasing(self) -> bool:
        errors = [r.sup_error for r in self.rows]
        return all(b < a for a, b in zip(errors, errors[1:]))


@dataclass(frozen=True)
class SuiteResult:
    """Verdict of one property suite; serialized as {suite, pass, max_violation}."""

    suite: str
    passed: bool
    max_violation: float
    checks: int = 0
    details: tuple[str, ...] = field(default_factory=tuple)
