"""Verification harness for the smoothing and extension operators.

Convergence tables, the explicit operator-bound certificate, empirical
rate fits and named property suites, written as deterministic CSV and a
JSON suite summary.
"""

from clsmooth.bench.types import (
    BoundCertificate,
    BoundRow,
    ConvergenceRow,
    ConvergenceTable,
    CorpusEntry,
    GrowthRow,
    RateFit,
    SuiteResult,
    UniformFamilyReport,
    UniformRow,
)

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
