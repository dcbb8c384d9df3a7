"""Tests for clsmooth.expr: parser, printer and exact jets."""

from __future__ import annotations

import math

import pytest

from clsmooth.exceptions import (
    DomainEvaluationError,
    ExpressionSyntaxError,
    PreconditionError,
    UnknownIdentifierError,
)
from clsmooth.expr import (
    BinOp,
    Call,
    Neg,
    Num,
    Pow,
    Var,
    dimension_of,
    eval_jet,
    evaluate,
    parse,
    parse_components,
    to_text,
)


class TestParse:
    def test_precedence(self):
        assert parse("1 + 2*x1") == BinOp("+", Num(1.0), BinOp("*", Num(2.0), Var(1)))

    def test_power_binds_tighter_than_unary_minus(self):
        assert parse("-x1^2") == Neg(Pow(Var(1), 2))

    def test_left_associative_subtraction(self):
        assert parse("x1 - x2 - x3") == BinOp("-", BinOp("-", Var(1), Var(2)), Var(3))

    def test_function_call(self):
        assert parse("exp(x2)") == Call("exp", Var(2))

    def test_scientific_literal(self):
        assert parse("1.5e-3") == Num(1.5e-3)

    def test_printer_reparses_to_same_tree(self):
        tree = parse("sin(x1 - 2*x2)^3 / (1 + exp(-x1))")
        assert parse(to_text(tree)) == tree

    def test_components(self):
        parts = parse_components("x1; x1^2; cos(x2)")
        assert len(parts) == 3
        assert parts[1] == Pow(Var(1), 2)

    def test_dimension_of(self):
        assert dimension_of(parse("x3 + x1")) == 3
        assert dimension_of(parse("2.5")) == 0


class TestParseErrors:
    def test_missing_operand_offset(self):
        with pytest.raises(ExpressionSyntaxError) as info:
            parse("1 + * 2")
        assert info.value.offset == 4

    def test_unexpected_character_offset(self):
        with pytest.raises(ExpressionSyntaxError) as info:
            parse("x1 $")
        assert info.value.offset == 3

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError, match="unknown identifier 'y'"):
            parse("y + 1")

    def test_x0_is_not_a_variable(self):
        with pytest.raises(UnknownIdentifierError):
            parse("x0")

    def test_fractional_exponent_rejected(self):
        with pytest.raises(ExpressionSyntaxError, match="non-negative integer"):
            parse("x1^2.5")

    def test_negative_exponent_rejected(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("x1^-2")

    def test_unbalanced_parenthesis(self):
        with pytest.raises(ExpressionSyntaxError, match=r"expected '\)'"):
            parse("(x1 + 1")

    def test_trailing_tokens(self):
        with pytest.raises(ExpressionSyntaxError, match="after expression"):
            parse("x1 x2")


class TestEvaluate:
    def test_value(self):
        assert evaluate(parse("x1^2*x2 - 1"), (2.0, 3.0)) == 11.0

    def test_division_by_zero_names_denominator(self):
        with pytest.raises(DomainEvaluationError) as info:
            evaluate(parse("1/(x1 - 1)"), (1.0,))
        assert info.value.subexpression == "(x1 - 1.0)"

    def test_variable_beyond_point_dimension(self):
        with pytest.raises(PreconditionError):
            evaluate(parse("x2"), (1.0,))

    def test_exp_overflow_names_call(self):
        expr = parse("exp(1000*x1)")
        with pytest.raises(DomainEvaluationError, match="overflow") as info:
            evaluate(expr, (1.0,))
        assert info.value.subexpression == to_text(expr)

    def test_power_overflow_names_power(self):
        expr = parse("(10*x1)^400")
        with pytest.raises(DomainEvaluationError) as info:
            evaluate(expr, (100.0,))
        assert info.value.subexpression == to_text(expr)


class TestEvalJet:
    def test_polynomial_partials(self):
        jet = eval_jet(parse("x1^2*x2"), (2.0, 3.0), 2)
        assert jet.value[0] == pytest.approx(12.0)
        assert jet[(1, 0)][0] == pytest.approx(12.0)
        assert jet[(0, 1)][0] == pytest.approx(4.0)
        assert jet[(2, 0)][0] == pytest.approx(6.0)
        assert jet[(1, 1)][0] == pytest.approx(4.0)
        assert jet[(0, 2)][0] == pytest.approx(0.0, abs=1e-15)

    def test_sine_derivatives_at_zero(self):
        jet = eval_jet(parse("sin(x1)"), (0.0,), 3)
        assert [jet[(k,)][0] for k in range(4)] == pytest.approx([0.0, 1.0, 0.0, -1.0])

    def test_exponential_chain_rule(self):
        jet = eval_jet(parse("exp(2*x1)"), (0.5,), 2)
        assert jet[(2,)][0] == pytest.approx(4.0 * math.e)

    def test_quotient(self):
        jet = eval_jet(parse("1/x1"), (2.0,), 2)
        assert jet[(1,)][0] == pytest.approx(-0.25)
        assert jet[(2,)][0] == pytest.approx(0.25)

    def test_vector_valued(self):
        jet = eval_jet(parse_components("x1; 3*x1"), (1.0,), 1)
        assert jet.target_dim == 2
        assert jet[(1,)].tolist() == pytest.approx([1.0, 3.0])

    def test_singular_series_is_domain_error(self):
        with pytest.raises(DomainEvaluationError):
            eval_jet(parse("1/(x1 - 1)"), (1.0,), 1)

    def test_exp_overflow_is_domain_error(self):
        expr = parse("exp(1000*x1)")
        with pytest.raises(DomainEvaluationError) as info:
            eval_jet(expr, (1.0,), 2)
        assert info.value.subexpression == to_text(expr)

    def test_nested_overflow_names_innermost_call(self):
        with pytest.raises(DomainEvaluationError) as info:
            eval_jet(parse("sin(exp(1000*x1))"), (1.0,), 1)
        assert info.value.subexpression == to_text(parse("exp(1000*x1)"))

    def test_order_above_maximum(self):
        with pytest.raises(PreconditionError, match="exceeds"):
            eval_jet(parse("x1"), (0.0,), 7)
