# planelie/services/parser.py
"""
Recursive-descent parser for the expression grammar and for the vector-field,
metric and algebra-file literals built on top of it.

    expr     := term (("+" | "-") term)*
    term     := signed (("*" | "/") signed | <juxtaposed differential>)*
    signed   := ("-" | "+") signed | power
    power    := atom ("^" exponent)?
    exponent := ["-" | "+"] integer | "(" ["-" | "+"] integer ")"
    atom     := integer | "x" | "y" | parameter | ("exp" | "log" | "sqrt") "(" expr ")" | "(" expr ")"

Unary minus binds looser than ``^`` (``-x^2`` is ``-(x^2)``). Inside a literal
the differential tokens (``dx``, ``dy`` or ``dxdx``, ``dxdy``, ``dydy``) may
follow a factor without ``*``.
"""
import logging
import re
from typing import Iterable, Mapping, Optional

import sympy

from planelie.core.errors import (
    ConstraintViolationError,
    ExpressionSyntaxError,
    PoleError,
    UnknownIdentifierError,
    UsageError,
)
from planelie.models.algebra import LieAlgebraPresentation
from planelie.models.fields import REFERENCE_METRICS, CovTensor2, VectorField
from planelie.models.parameter import Constraint, Parameter
from planelie.services.expr import canonical, x, y

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()])|(?P<bad>\S))")

FUNCTIONS = {"exp": sympy.exp, "log": sympy.log, "sqrt": sympy.sqrt}
VECTOR_UNITS = ("dx", "dy")
METRIC_UNITS = ("dxdx", "dxdy", "dydy")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"{self.kind}:{self.text!r}@{self.pos}"


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.lastgroup is None:
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise ExpressionSyntaxError(f"unexpected character {m.group(kind)!r}", text, start)
        tokens.append(_Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, symbols: Mapping[str, sympy.Expr], units: Mapping[str, sympy.Symbol]):
        self.text = text
        self.symbols = symbols
        self.units = units
        self.tokens = _tokenize(text)
        self.i = 0

    # --- token helpers ---

    @property
    def peek(self) -> _Token:
        return self.tokens[self.i]

    def _is_op(self, *ops: str) -> bool:
        return self.peek.kind == "op" and self.peek.text in ops

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op: str) -> _Token:
        if not self._is_op(op):
            self.fail(f"expected {op!r}")
        return self.advance()

    def fail(self, detail: str, tok: Optional[_Token] = None):
        tok = tok or self.peek
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExpressionSyntaxError(f"{detail}, found {found}", self.text, tok.pos)

    # --- grammar ---

    def parse(self) -> sympy.Expr:
        if self.peek.kind == "end":
            self.fail("empty expression")
        e = self.expr()
        if self.peek.kind != "end":
            self.fail("unexpected token")
        return e

    def expr(self) -> sympy.Expr:
        e = self.term()
        while self._is_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> sympy.Expr:
        e = self.signed()
        while True:
            if self._is_op("*"):
                self.advance()
                e = e * self.signed()
            elif self._is_op("/"):
                tok = self.advance()
                d = self.signed()
                if d == 0:
                    raise PoleError(f"division by zero at position {tok.pos}: {self.text!r}")
                e = e / d
            elif self.peek.kind == "name" and self.peek.text in self.units:
                e = e * self.units[self.advance().text]
            else:
                return e

    def signed(self) -> sympy.Expr:
        if self._is_op("-"):
            self.advance()
            return -self.signed()
        if self._is_op("+"):
            self.advance()
            return self.signed()
        return self.power()

    def power(self) -> sympy.Expr:
        base = self.atom()
        if not self._is_op("^"):
            return base
        tok = self.advance()
        n = self.exponent()
        if base == 0 and n < 0:
            raise PoleError(f"zero raised to a negative power at position {tok.pos}: {self.text!r}")
        return base ** n

    def exponent(self) -> sympy.Integer:
        if self._is_op("("):
            self.advance()
            n = self._signed_integer()
            self.expect(")")
            return n
        return self._signed_integer()

    def _signed_integer(self) -> sympy.Integer:
        sign = 1
        if self._is_op("-", "+"):
            sign = -1 if self.advance().text == "-" else 1
        if self.peek.kind != "num":
            self.fail("exponents must be integers")
        return sympy.Integer(sign * int(self.advance().text))

    def atom(self) -> sympy.Expr:
        tok = self.peek
        if tok.kind == "num":
            self.advance()
            return sympy.Integer(int(tok.text))
        if self._is_op("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "name":
            self.advance()
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                value = FUNCTIONS[tok.text](arg)
                if value.has(sympy.zoo, sympy.nan, sympy.oo, -sympy.oo):
                    raise PoleError(f"{tok.text} is undefined at position {tok.pos}: {self.text!r}")
                return value
            if tok.text in self.units:
                return self.units[tok.text]
            if tok.text in self.symbols:
                return self.symbols[tok.text]
            raise UnknownIdentifierError(tok.text, self.text, tok.pos)
        self.fail("expected a number, identifier or '('")


def _symbol_table(parameters: Iterable[Parameter]) -> dict[str, sympy.Expr]:
    table: dict[str, sympy.Expr] = {"x": x, "y": y}
    for p in parameters:
        if p.name in table or p.name in FUNCTIONS:
            raise UsageError(f"parameter name {p.name!r} is reserved")
        table[p.name] = p.value if p.bound else p.symbol
    return table


def _raw(text: str, parameters: Iterable[Parameter], units: Mapping[str, sympy.Symbol]) -> sympy.Expr:
    return _Parser(text, _symbol_table(parameters), units).parse()


def parse(text: str, parameters: Iterable[Parameter] = ()) -> sympy.Expr:
    """Parse an expression; bound parameters are replaced by their values."""
    return canonical(_raw(text, parameters, {}))


def _linear_coefficients(raw: sympy.Expr, units: Mapping[str, sympy.Symbol], text: str) -> list[sympy.Expr]:
    placeholders = list(units.values())
    coefficients = [sympy.diff(raw, u) for u in placeholders]
    if any(c.has(*placeholders) for c in coefficients):
        raise ExpressionSyntaxError("literal is not linear in its differentials", text, 0)
    remainder = raw - sum(c * u for c, u in zip(coefficients, placeholders))
    if canonical(remainder) != 0:
        raise ExpressionSyntaxError(f"term without a differential ({', '.join(units)})", text, 0)
    return [canonical(c) for c in coefficients]


def _units(names: Iterable[str]) -> dict[str, sympy.Symbol]:
    return {n: sympy.Dummy(n) for n in names}


def parse_vector_field(text: str, parameters: Iterable[Parameter] = ()) -> VectorField:
    """``<expr> dx + <expr> dy``; ``dx`` and ``dy`` stand for the coordinate derivations."""
    units = _units(VECTOR_UNITS)
    xx, yy = _linear_coefficients(_raw(text, parameters, units), units, text)
    return VectorField(xx, yy)


def parse_metric(text: str, parameters: Iterable[Parameter] = ()) -> CovTensor2:
    """``<expr> dxdx + <expr> dxdy + <expr> dydy`` or one of the names ``gE``, ``gH``."""
    name = text.strip()
    if name in REFERENCE_METRICS:
        return REFERENCE_METRICS[name]
    units = _units(METRIC_UNITS)
    gxx, gxy, gyy = _linear_coefficients(_raw(text, parameters, units), units, text)
    return CovTensor2(gxx, gxy, gyy)


# ---------------------------------------------------------------------------
# algebra files
# ---------------------------------------------------------------------------

_PARAM_LINE = re.compile(
    r"^param\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"(?:\s+(?P<constraint>free|nonzero|positive|integer))?"
    r"(?:\s*=\s*(?P<value>\S+))?\s*$"
)
_FIELD_LINE = re.compile(r"^(?P<label>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?P<body>.+)$")


def parse_parameter_bindings(pairs: Iterable[str]) -> dict[str, str]:
    """``name=value`` strings (as given to ``--param``) to a dict."""
    out = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise UsageError(f"expected name=value, got {pair!r}")
        out[name.strip()] = value.strip()
    return out


def parse_algebra(text: str, bindings: Optional[Mapping[str, str]] = None) -> LieAlgebraPresentation:
    """
    Algebra file: one field per line ``Xi = <expr> dx + <expr> dy``,
    ``param <name> [free|nonzero|positive|integer] [= value]`` declarations and
    ``#`` comments. ``bindings`` assigns (or overrides) parameter values.
    """
    bindings = dict(bindings or {})
    parameters: dict[str, Parameter] = {}
    fields: list[tuple[str, str, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("param ") or line == "param":
            m = _PARAM_LINE.match(line)
            if m is None:
                raise ExpressionSyntaxError("malformed parameter declaration", line, 0)
            name = m["name"]
            if name in parameters:
                raise UsageError(f"line {lineno}: parameter {name!r} declared twice")
            try:
                parameters[name] = Parameter(
                    name=name,
                    constraint=Constraint(m["constraint"] or "free"),
                    value=bindings.pop(name, m["value"]),
                )
            except ValueError as exc:
                raise ConstraintViolationError(f"line {lineno}: {_first_error(exc)}")
            continue
        m = _FIELD_LINE.match(line)
        if m is None:
            raise ExpressionSyntaxError(f"line {lineno}: expected 'Xi = <field>'", line, 0)
        fields.append((m["label"], m["body"], lineno))
    if bindings:
        raise UsageError(f"undeclared parameter(s): {', '.join(sorted(bindings))}")
    if not fields:
        raise UsageError("algebra file declares no vector fields")
    labels = [label for label, _, _ in fields]
    if len(set(labels)) != len(labels):
        raise UsageError("duplicate field labels in algebra file")
    params = tuple(parameters.values())
    basis = tuple(parse_vector_field(body, params) for _, body, _ in fields)
    logger.debug(f"parsed algebra with {len(basis)} fields and parameters {[p.name for p in params]}")
    return LieAlgebraPresentation(basis=basis, labels=tuple(labels), parameters=params)


def _first_error(exc: ValueError) -> str:
    errors = getattr(exc, "errors", None)
    if callable(errors):
        found = errors()
        if found:
            return str(found[0].get("msg", exc))
    return str(exc)
