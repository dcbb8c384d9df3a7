"""Multi-index calculus: series, jets, polynomials, forms and seminorms."""

from clsmooth.calculus.forms import SymmetricForm, form_norm, polarize
from clsmooth.calculus.jet import Jet
from clsmooth.calculus.multiindex import MAX_ORDER, MultiIndex, check_order, multi_indices
from clsmooth.calculus.polynomial import PolynomialMap, gateaux_polynomial, taylor_polynomial
from clsmooth.calculus.seminorm import SeminormKind, SeminormSpec, seminorm_cl, seminorm_profile
from clsmooth.calculus.series import MultiSeries, TaylorSeries

__all__ = [
    "MAX_ORDER",
    "Jet",
    "MultiIndex",
    "MultiSeries",
    "PolynomialMap",
    "SeminormKind",
    "SeminormSpec",
    "SymmetricForm",
    "TaylorSeries",
    "check_order",
    "form_norm",
    "gateaux_polynomial",
    "multi_indices",
    "polarize",
    "seminorm_cl",
    "seminorm_profile",
    "taylor_polynomial",
]
