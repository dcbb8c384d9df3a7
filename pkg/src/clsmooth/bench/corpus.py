"""The test-function corpus used by the convergence, bound and property suites."""

from __future__ import annotations

import logging

from clsmooth.bench.types import CorpusEntry
from clsmooth.exceptions import PreconditionError
from clsmooth.smoothing.provider import ExpressionProvider

__all__ = ["CORPUS", "corpus_entries", "get_entry", "provider_for"]

logger = logging.getLogger(__name__)

CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("constant", "3", 1, 1, "polynomial", 0),
    CorpusEntry("affine", "2*x1 - 1", 1, 1, "polynomial", 1),
    CorpusEntry("quadratic-2d", "x1^2 - x1*x2 + 0.5*x2", 2, 1, "polynomial", 2),
    CorpusEntry("sine", "sin(x1)", 1, 1, "trigonometric"),
    CorpusEntry("cosine-2d", "cos(x1 + 2*x2)", 2, 1, "trigonometric"),
    CorpusEntry("exponential", "exp(x1/2)", 1, 1, "exponential"),
    CorpusEntry("gaussian-2d", "exp(-(x1^2 + x2^2))", 2, 1, "exponential"),
    CorpusEntry("rank-one", "sin(x1); 2*sin(x1); -sin(x1)", 1, 3, "rank-one"),
    CorpusEntry("full-rank", "sin(x1); cos(x1); exp(x1)", 1, 3, "full-rank"),
    CorpusEntry("full-rank-2d", "x1*x2; sin(x1 - x2); exp(x2)/2", 2, 3, "full-rank"),
)


def corpus_entries(
    dimension: int | None = None, *, exclude_exact: int | None = None
) -> list[CorpusEntry]:
    """Corpus entries, optionally of one dimension.

    ``exclude_exact=ℓ`` drops polynomials of degree <= ℓ, which every
    smoothing reproduces exactly.
    """
    out = []
    for entry in CORPUS:
        if dimension is not None and entry.dimension != dimension:
            continue
        degree = entry.degree
        if exclude_exact is not None and degree is not None and degree <= exclude_exact:
            continue
        out.append(entry)
    return out


def get_entry(name: str) -> CorpusEntry:
    for entry in CORPUS:
        if entry.name == name:
            return entry
    raise PreconditionError(
        f"unknown corpus function {name!r}. Available: {[e.name for e in CORPUS]}"
    )


def provider_for(entry: CorpusEntry) -> ExpressionProvider:
    return ExpressionProvider.from_text(entry.expression, entry.dimension)
