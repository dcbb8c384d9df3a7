"""Test-function expressions: parser, printer and exact jets."""

from clsmooth.expr.evaluate import eval_jet, eval_series, evaluate
from clsmooth.expr.nodes import BinOp, Call, Expr, Neg, Num, Pow, Var, dimension_of, to_text
from clsmooth.expr.parser import parse, parse_components

__all__ = [
    "BinOp",
    "Call",
    "Expr",
    "Neg",
    "Num",
    "Pow",
    "Var",
    "dimension_of",
    "eval_jet",
    "eval_series",
    "evaluate",
    "parse",
    "parse_components",
    "to_text",
]
