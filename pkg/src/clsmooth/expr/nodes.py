"""Expression tree nodes and the canonical printer."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

__all__ = [
    "FUNCTIONS",
    "BinOp",
    "Call",
    "Expr",
    "Neg",
    "Num",
    "Pow",
    "Var",
    "dimension_of",
    "to_text",
    "variables",
]

FUNCTIONS = ("sin", "cos", "exp")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    """The coordinate x_index (1-based)."""

    index: int


@dataclass(frozen=True)
class Neg:
    operand: Expr


@dataclass(frozen=True)
class BinOp:
    op: Literal["+", "-", "*", "/"]
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow:
    """base^exponent with a non-negative integer exponent."""

    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call:
    func: Literal["sin", "cos", "exp"]
    arg: Expr


Expr = Union[Num, Var, Neg, BinOp, Pow, Call]


def to_text(expr: Expr) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    match expr:
        case Num(value):
            text = repr(float(value))
            return f"(-{text[1:]})" if text.startswith("-") else text
        case Var(index):
            return f"x{index}"
        case Neg(operand):
            return f"(-{to_text(operand)})"
        case BinOp(op, left, right):
            return f"({to_text(left)} {op} {to_text(right)})"
        case Pow(base, exponent):
            return f"({to_text(base)}^{exponent})"
        case Call(func, arg):
            return f"{func}({to_text(arg)})"
    raise TypeError(f"not an expression node: {expr!r}")


def variables(expr: Expr) -> set[int]:
    match expr:
        case Num():
            return set()
        case Var(index):
            return {index}
        case Neg(operand) | Pow(operand, _) | Call(_, operand):
            return variables(operand)
        case BinOp(_, left, right):
            return variables(left) | variables(right)
    raise TypeError(f"not an expression node: {expr!r}")


def dimension_of(expr: Expr) -> int:
    """Largest variable index used (0 for constants)."""
    return max(variables(expr), default=0)
