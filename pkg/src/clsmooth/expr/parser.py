"""Recursive-descent parser for test-function expressions.

Grammar::

    components := expr (';' expr)*
    expr       := term (('+' | '-') term)*
    term       := unary (('*' | '/') unary)*
    unary      := ('-' | '+') unary | power
    power      := atom ('^' INTEGER)?
    atom       := NUMBER | xN | FUNC '(' expr ')' | '(' expr ')'
    FUNC       := sin | cos | exp

Power binds tighter than unary minus, so ``-x1^2`` is ``-(x1^2)``.
Error offsets are byte offsets into the UTF-8 encoded source.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass

from clsmooth.exceptions import ExpressionSyntaxError, UnknownIdentifierError
from clsmooth.expr.nodes import FUNCTIONS, BinOp, Call, Expr, Neg, Num, Pow, Var

__all__ = ["parse", "parse_components"]

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^();])"
    r")"
)
_VARIABLE = re.compile(r"x([1-9]\d*)")


@dataclass(frozen=True)
class _Token:
    kind: str  # num, name, op, end
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while True:
        match = _TOKEN.match(text, pos)
        if match is None or match.lastgroup is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            if start >= len(text):
                tokens.append(_Token("end", "", len(text.encode("utf-8"))))
                return tokens
            offset = len(text[:start].encode("utf-8"))
            raise ExpressionSyntaxError(f"unexpected character {text[start]!r}", offset)
        start = match.start(match.lastgroup)
        tokens.append(
            _Token(
                match.lastgroup,
                match.group(match.lastgroup),
                len(text[:start].encode("utf-8")),
            )
        )
        pos = match.end()


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        token = self.tokens[self.pos]
        if token.kind != "end":
            self.pos += 1
        return token

    def _accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self._advance()
            return True
        return False

    def _expect(self, op: str) -> None:
        if not self._accept(op):
            found = self.current.text or "end of input"
            raise ExpressionSyntaxError(f"expected {op!r}, found {found!r}", self.current.offset)

    def components(self) -> tuple[Expr, ...]:
        parts = [self.expr()]
        while self._accept(";"):
            parts.append(self.expr())
        self.finish()
        return tuple(parts)

    def finish(self) -> None:
        if self.current.kind != "end":
            raise ExpressionSyntaxError(
                f"unexpected {self.current.text!r} after expression", self.current.offset
            )

    def expr(self) -> Expr:
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self._advance().text
            node = BinOp(op, node, self.term())  # type: ignore[arg-type]
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self._advance().text
            node = BinOp(op, node, self.unary())  # type: ignore[arg-type]
        return node

    def unary(self) -> Expr:
        if self._accept("-"):
            return Neg(self.unary())
        if self._accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._accept("^"):
            token = self.current
            if token.kind != "num" or not token.text.isdigit():
                raise ExpressionSyntaxError(
                    "exponent must be a non-negative integer literal", token.offset
                )
            self._advance()
            return Pow(base, int(token.text))
        return base

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "num":
            self._advance()
            value = float(token.text)
            if not math.isfinite(value):
                raise ExpressionSyntaxError(f"literal {token.text!r} overflows", token.offset)
            return Num(value)
        if token.kind == "name":
            self._advance()
            if token.text in FUNCTIONS:
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Call(token.text, arg)  # type: ignore[arg-type]
            variable = _VARIABLE.fullmatch(token.text)
            if variable is None:
                raise UnknownIdentifierError(f"unknown identifier {token.text!r}", token.offset)
            return Var(int(variable.group(1)))
        if self._accept("("):
            node = self.expr()
            self._expect(")")
            return node
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"expected an operand, found {found!r}", token.offset)


def parse(text: str) -> Expr:
    """Parse one expression.

    Raises:
        ExpressionSyntaxError: On malformed input; ``offset`` marks the failure.
        UnknownIdentifierError: On a name that is not x1, x2, ... or a function.
    """
    parser = _Parser(text)
    node = parser.expr()
    parser.finish()
    return node


def parse_components(text: str) -> tuple[Expr, ...]:
    """Parse ``"e1; e2; ..."`` into one expression per output component."""
    parts = _Parser(text).components()
    logger.debug("parsed %d component(s) from %r", len(parts), text)
    return parts
