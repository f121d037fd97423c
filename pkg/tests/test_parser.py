import pytest
import sympy

from planelie.core.errors import (
    ConstraintViolationError,
    DependentBasisError,
    ExpressionSyntaxError,
    PoleError,
    UnknownIdentifierError,
    UsageError,
)
from planelie.models.fields import G_E, G_H, VectorField
from planelie.models.parameter import Constraint, Parameter
from planelie.services.expr import x, y
from planelie.services.parser import (
    parse,
    parse_algebra,
    parse_metric,
    parse_parameter_bindings,
    parse_vector_field,
)


def test_unary_minus_binds_looser_than_power():
    assert parse("-x^2") == -(x**2)
    assert parse("(-x)^2") == x**2


def test_signed_and_parenthesised_exponents():
    assert parse("x^-2") == 1 / x**2
    assert parse("x^(-2)") == 1 / x**2
    assert parse("x^(3)") == x**3


def test_rational_expression_with_denominator():
    e = parse("1/(x-y)^2")
    assert sympy.fraction(e)[1] == sympy.expand((x - y) ** 2)


def test_parameters_symbolic_and_bound():
    c = Parameter(name="c", constraint=Constraint.NONZERO)
    assert parse("exp(c*x)", [c]) == sympy.exp(c.symbol * x)
    assert parse("c*x", [c.bind(3)]) == 3 * x


def test_unknown_identifier_reports_position():
    with pytest.raises(UnknownIdentifierError) as info:
        parse("x + z")
    assert info.value.position == 4
    assert info.value.name == "z"


@pytest.mark.parametrize("text", ["x +", "x ^ y", "(x", "x $ y", ""])
def test_syntax_errors(text):
    with pytest.raises(ExpressionSyntaxError):
        parse(text)


def test_division_by_zero_is_a_pole():
    with pytest.raises(PoleError):
        parse("x/0")


def test_vector_field_literal_with_juxtaposition():
    X = parse_vector_field("x^2 dx + y^2*dy")
    assert X == VectorField(x**2, y**2)
    assert parse_vector_field("dx") == VectorField(1, 0)
    assert parse_vector_field("(alpha*x + y) dx", [Parameter(name="alpha", value=0)]) == VectorField(y, 0)


def test_vector_field_literal_rejects_bare_terms():
    with pytest.raises(ExpressionSyntaxError):
        parse_vector_field("x dx + 1")
    with pytest.raises(ExpressionSyntaxError):
        parse_vector_field("dx*dy")


def test_metric_literal_and_builtin_names():
    assert parse_metric("dxdx + dydy") == G_E
    assert parse_metric("dxdy") == G_H
    assert parse_metric("gE") == G_E
    assert parse_metric(" gH ") == G_H


def test_parameter_bindings():
    assert parse_parameter_bindings(["c=2", " alpha = 1/2 "]) == {"c": "2", "alpha": "1/2"}
    with pytest.raises(UsageError):
        parse_parameter_bindings(["c"])


MILNE_PINNEY = """
# Milne-Pinney
param c nonzero
X1 = -x dy
X2 = -x/2 dx + y/2 dy
X3 = y dx + c/x^3 dy
"""


def test_algebra_file():
    V = parse_algebra(MILNE_PINNEY)
    assert V.labels == ("X1", "X2", "X3")
    assert V.free_parameters[0].name == "c"
    bound = parse_algebra(MILNE_PINNEY, {"c": "2"})
    assert bound[2] == VectorField(y, 2 / x**3)


def test_algebra_file_errors():
    with pytest.raises(ConstraintViolationError):
        parse_algebra(MILNE_PINNEY, {"c": "0"})
    with pytest.raises(UsageError):
        parse_algebra(MILNE_PINNEY, {"d": "1"})
    with pytest.raises(UsageError):
        parse_algebra("X1 = dx\nX1 = dy\n")
    with pytest.raises(UsageError):
        parse_algebra("# nothing here\n")
    with pytest.raises(DependentBasisError):
        parse_algebra("X1 = dx\nX2 = 2 dx\n")
