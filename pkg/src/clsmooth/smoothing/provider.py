"""Jet providers: the functions γ fed into smoothing and extension operators."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from clsmooth.calculus.jet import Jet
from clsmooth.calculus.multiindex import MAX_ORDER, check_order
from clsmooth.exceptions import PreconditionError
from clsmooth.expr.evaluate import eval_jet
from clsmooth.expr.nodes import dimension_of, to_text
from clsmooth.expr.parser import parse_components

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from clsmooth.expr.nodes import Expr
    from clsmooth.geometry.boxes import BoxUnion
    from clsmooth.types import JetProvider

__all__ = [
    "ComponentProvider",
    "ExpressionProvider",
    "LinearCombinationProvider",
    "RestrictedProvider",
    "StackedProvider",
    "difference",
    "provider_value",
]

logger = logging.getLogger(__name__)


def provider_value(provider: JetProvider, x: Sequence[float]) -> NDArray[np.float64]:
    """γ(x) through the jet contract."""
    return provider.jet(x, 0).value


@dataclass(frozen=True)
class ExpressionProvider:
    """γ given by one parsed expression per output component."""

    components: tuple[Expr, ...]
    dimension: int
    max_order: int = MAX_ORDER

    def __post_init__(self) -> None:
        check_order(self.max_order)
        if not self.components:
            raise PreconditionError("an expression provider needs at least one component")
        used = max(dimension_of(e) for e in self.components)
        if self.dimension < max(used, 1):
            raise PreconditionError(
                f"expression uses x{used} but the provider has dimension {self.dimension}"
            )

    @classmethod
    def from_text(
        cls, text: str, dimension: int | None = None, *, max_order: int = MAX_ORDER
    ) -> ExpressionProvider:
        """Parse ``"e1; e2; ..."``; dimension defaults to the largest variable used."""
        components = parse_components(text)
        used = max(dimension_of(e) for e in components)
        return cls(components, dimension if dimension is not None else max(used, 1), max_order)

    @property
    def target_dim(self) -> int:
        return len(self.components)

    @property
    def source(self) -> str:
        return "; ".join(to_text(e) for e in self.components)

    def jet(self, x: Sequence[float], order: int) -> Jet:
        if len(x) != self.dimension:
            raise PreconditionError(f"point of length {len(x)} for d={self.dimension}")
        return eval_jet(self.components, x, order, max_order=self.max_order)


@dataclass(frozen=True)
class LinearCombinationProvider:
    """Σ_i c_i γ_i over providers of equal shape."""

    terms: tuple[tuple[float, JetProvider], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise PreconditionError("a linear combination needs at least one term")
        shapes = {(p.dimension, p.target_dim) for _, p in self.terms}
        if len(shapes) != 1:
            raise PreconditionError(f"cannot combine providers of shapes {sorted(shapes)}")

    @property
    def dimension(self) -> int:
        return self.terms[0][1].dimension

    @property
    def target_dim(self) -> int:
        return self.terms[0][1].target_dim

    def jet(self, x: Sequence[float], order: int) -> Jet:
        total: Jet | None = None
        for coefficient, provider in self.terms:
            part = provider.jet(x, order) * coefficient
            total = part if total is None else total + part
        assert total is not None
        return total


def difference(a: JetProvider, b: JetProvider) -> LinearCombinationProvider:
    """a - b."""
    return LinearCombinationProvider(((1.0, a), (-1.0, b)))


@dataclass(frozen=True)
class RestrictedProvider:
    """γ on a closed support set, reported as the zero jet everywhere else."""

    source: JetProvider
    support: BoxUnion

    @property
    def dimension(self) -> int:
        return self.source.dimension

    @property
    def target_dim(self) -> int:
        return self.source.target_dim

    def jet(self, x: Sequence[float], order: int) -> Jet:
        if self.support.closure().contains(x):
            return self.source.jet(x, order)
        return Jet.zero(x, order, self.target_dim)


@dataclass(frozen=True)
class ComponentProvider:
    """The scalar component γ_index of a vector-valued provider."""

    source: JetProvider
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < self.source.target_dim:
            raise PreconditionError(
                f"component {self.index} out of range for m={self.source.target_dim}"
            )

    @property
    def dimension(self) -> int:
        return self.source.dimension

    @property
    def target_dim(self) -> int:
        return 1

    def jet(self, x: Sequence[float], order: int) -> Jet:
        return self.source.jet(x, order).select([self.index])


@dataclass(frozen=True)
class StackedProvider:
    """(γ_1, ..., γ_m) assembled from providers on a common domain."""

    parts: tuple[JetProvider, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise PreconditionError("nothing to stack")
        if len({p.dimension for p in self.parts}) != 1:
            raise PreconditionError("stacked providers must share one dimension")

    @property
    def dimension(self) -> int:
        return self.parts[0].dimension

    @property
    def target_dim(self) -> int:
        return sum(p.target_dim for p in self.parts)

    def jet(self, x: Sequence[float], order: int) -> Jet:
        jets = [p.jet(x, order) for p in self.parts]
        return Jet(tuple(x), order, np.concatenate([j.values for j in jets], axis=-1))
