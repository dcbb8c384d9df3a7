"""Point values and exact jets of parsed expressions."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

from clsmooth.calculus.jet import Jet
from clsmooth.calculus.multiindex import MAX_ORDER, check_order
from clsmooth.calculus.series import MultiSeries
from clsmooth.exceptions import DomainEvaluationError, PreconditionError, SingularityError
from clsmooth.expr.nodes import BinOp, Call, Expr, Neg, Num, Pow, Var, to_text

if TYPE_CHECKING:
    from collections.abc import Sequence

__all__ = ["eval_jet", "eval_series", "evaluate"]


def _variable(index: int, x: Sequence[float]) -> int:
    if index > len(x):
        raise PreconditionError(f"x{index} used at a point of dimension {len(x)}")
    return index - 1


def evaluate(expr: Expr, x: Sequence[float]) -> float:
    """Plain floating-point value of ``expr`` at ``x``."""
    match expr:
        case Num(value):
            return value
        case Var(index):
            return float(x[_variable(index, x)])
        case Neg(operand):
            return -evaluate(operand, x)
        case BinOp("/", left, right):
            denominator = evaluate(right, x)
            if denominator == 0.0:
                raise DomainEvaluationError("division by zero", to_text(right))
            return evaluate(left, x) / denominator
        case BinOp(op, left, right):
            a, b = evaluate(left, x), evaluate(right, x)
            return a + b if op == "+" else a - b if op == "-" else a * b
        case Pow(base, exponent):
            try:
                return evaluate(base, x) ** exponent
            except OverflowError as e:
                raise DomainEvaluationError("overflow", to_text(expr)) from e
        case Call(func, arg):
            try:
                return float(getattr(math, func)(evaluate(arg, x)))
            except OverflowError as e:
                raise DomainEvaluationError("overflow", to_text(expr)) from e
    raise TypeError(f"not an expression node: {expr!r}")


def eval_series(expr: Expr, x: Sequence[float], order: int) -> MultiSeries:
    """Truncated multivariate Taylor series of ``expr`` expanded at ``x``."""
    d = len(x)
    match expr:
        case Num(value):
            return MultiSeries.constant(value, d, order)
        case Var(index):
            axis = _variable(index, x)
            return MultiSeries.variable(float(x[axis]), axis, d, order)
        case Neg(operand):
            return -eval_series(operand, x, order)
        case BinOp(op, left, right):
            a = eval_series(left, x, order)
            b = eval_series(right, x, order)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            try:
                return a / b
            except SingularityError as e:
                raise DomainEvaluationError("division by zero", to_text(right)) from e
        case Pow(base, exponent):
            return eval_series(base, x, order) ** exponent
        case Call(func, arg):
            inner = eval_series(arg, x, order)
            if func == "sin":
                return inner.sin()
            if func == "cos":
                return inner.cos()
            try:
                return inner.exp()
            except SingularityError as e:
                raise DomainEvaluationError("overflow", to_text(expr)) from e
    raise TypeError(f"not an expression node: {expr!r}")


def eval_jet(
    exprs: Expr | Sequence[Expr], x: Sequence[float], order: int, *, max_order: int = MAX_ORDER
) -> Jet:
    """Exact jet of order ``order`` at ``x``; one output component per expression.

    Raises:
        DomainEvaluationError: If a denominator vanishes at ``x`` or exp overflows there.
        PreconditionError: If ``order`` exceeds ``max_order``.
    """
    check_order(order, max_order)
    parts = [exprs] if isinstance(exprs, (Num, Var, Neg, BinOp, Pow, Call)) else list(exprs)
    point = tuple(float(v) for v in x)
    return Jet.from_series(point, [eval_series(e, point, order) for e in parts])
