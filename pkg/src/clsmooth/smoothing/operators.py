"""The smoothing operators S̃_n, S_j and cube smoothing."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from clsmooth.calculus.polynomial import taylor_polynomial
from clsmooth.exceptions import GeometryError, InvariantError, PreconditionError
from clsmooth.geometry.boxes import BoxUnion
from clsmooth.geometry.lattice import lattice_sets, uncovered_cubes
from clsmooth.smoothing.smoothed import SmoothedFunction, SmoothingTerm

if TYPE_CHECKING:
    from clsmooth.geometry.exhaustion import Exhaustion
    from clsmooth.types import JetProvider

__all__ = [
    "SupportCertificate",
    "build_sn",
    "build_stilde",
    "certify_support",
    "cube_smoothing",
]

logger = logging.getLogger(__name__)

_LISTED_CUBES = 8


def build_stilde(
    provider: JetProvider,
    order: int,
    n: int,
    window: BoxUnion,
    omega: BoxUnion | None = None,
    *,
    strict: bool = True,
) -> SmoothedFunction:
    """S̃_n(γ) restricted to the terms z ∈ Φ_n(window).

    One term per z with polynomial P^ℓ_{z/n}(γ). The result agrees with
    the full operator at every point of the window.

    Args:
        provider: γ, supplying jets of order ``order`` at the lattice centers.
        order: ℓ.
        n: Lattice scale.
        window: Bounded evaluation region.
        omega: Open domain Ω; the whole space when omitted.
        strict: Require every partition function meeting the window to
            belong to M_n, so that the partition sums to one on the window.

    Raises:
        GeometryError: If the window is unbounded, or (strict) escapes the
            lattice coverage of Ω; the message lists the missing cubes.
    """
    if n < 1:
        raise PreconditionError(f"scale must be >= 1, got {n}")
    d = provider.dimension
    domain = omega if omega is not None else BoxUnion.whole_space(d)
    if window.dimension != d or domain.dimension != d:
        raise PreconditionError(f"window/domain dimension does not match d={d}")
    if not window.is_bounded:
        raise GeometryError("the evaluation window must be bounded")
    if strict:
        missing = uncovered_cubes(n, domain, window)
        if missing:
            shown = ", ".join(str(z) for z in missing[:_LISTED_CUBES])
            extra = len(missing) - _LISTED_CUBES
            more = f" and {extra} more" if extra > 0 else ""
            raise GeometryError(
                f"window escapes the lattice coverage of the domain at n={n}: "
                f"cubes z/n + [-1/n,1/n]^d not inside it for z = {shown}{more}"
            )
    terms = []
    for z in lattice_sets(n, domain, window):
        center = tuple(v / n for v in z)
        terms.append(SmoothingTerm(z, n, taylor_polynomial(provider.jet(center, order), order)))
    logger.debug("S~_%d built with %d terms", n, len(terms))
    return SmoothedFunction(tuple(terms), order, d, provider.target_dim)


@dataclass(frozen=True)
class SupportCertificate:
    """Exact verdict on supp(S) ⊆ interior(container), from term cubes."""

    container: BoxUnion
    checked: int
    violations: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def certify_support(smoothed: SmoothedFunction, container: BoxUnion) -> SupportCertificate:
    """Check each nonzero term's closed cube against interior(container).

    Terms with an identically zero polynomial do not contribute to the
    support and are skipped.
    """
    checked = 0
    violations = []
    for term in smoothed.terms:
        if not np.any(term.polynomial.coefficients):
            continue
        checked += 1
        lower, upper = term.cube()
        if not container.contains_box_in_interior(lower, upper):
            violations.append((term.n, term.z))
    return SupportCertificate(container, checked, violations)


def build_sn(
    provider: JetProvider, order: int, exhaustion: Exhaustion, j: int
) -> SmoothedFunction:
    """S_j(γ) = Σ_{z ∈ Φ_j} h_{m_j,z} · P^ℓ_{z/m_j}(γ)(· - z/m_j), Φ_j meeting K_j.

    The support is certified inside interior(K_{j+1}) before returning.

    Raises:
        GeometryError: If j exceeds the exhaustion depth or its margin fails.
        InvariantError: If the support certificate fails.
    """
    m = exhaustion.scale(j)
    if not exhaustion.margin_ok(j):
        raise GeometryError(f"exhaustion margin fails at stage {j} (m_j={m})")
    stage = build_stilde(
        provider, order, m, exhaustion.compact(j), exhaustion.domain, strict=False
    )
    certificate = certify_support(stage, exhaustion.compact(j + 1))
    if not certificate.ok:
        raise InvariantError(
            f"S_{j} term cubes leave interior(K_{j + 1}): {certificate.violations[:_LISTED_CUBES]}"
        )
    logger.info("S_%d built at m=%d with %d terms", j, m, len(stage))
    return stage


def cube_smoothing(
    provider: JetProvider, order: int, n: int, *, nodes: tuple[float, ...] | None = None
) -> SmoothedFunction:
    """Smoothing on the closed unit cube: extend, smooth on R^d, restrict.

    Only lattice functions meeting [0,1]^d are materialized, which is exact
    on the cube.
    """
    from clsmooth.extension.operators import extend_cube

    d = provider.dimension
    extended = extend_cube(provider, order, nodes=nodes)
    cube = BoxUnion.cube(d, 0.0, 1.0, open=False)
    smoothed = build_stilde(extended, order, n, cube, BoxUnion.whole_space(d))
    return smoothed.restricted(cube)
