# planelie/services/expr.py
"""
Exact scalar-expression kernel.

Expressions are sympy expressions in the real coordinates ``x``, ``y`` and in
named parameters (see ``planelie.models.parameter``). The rational-function
fragment has a unique canonical form (``sympy.cancel``); expressions carrying
exp, log or sqrt are canonicalised with those atoms treated as generators and
are zero-tested by rewriting first and by deterministic high-precision sampling
(mpmath) as a last resort.
"""
import logging
import random
from typing import Any, Iterable, Mapping, Optional, Sequence

import mpmath
import sympy
from sympy.printing.precedence import PRECEDENCE
from sympy.printing.str import StrPrinter

from planelie.core.config import get_settings
from planelie.core.errors import (
    ConstraintViolationError,
    PoleError,
    UnboundParameterError,
    UnsupportedExpressionError,
)
from planelie.models.verdict import Certainty, Evaluation, Verdict

logger = logging.getLogger(__name__)

x = sympy.Symbol("x", real=True)
y = sympy.Symbol("y", real=True)
COORDINATES = (x, y)

_UNDEFINED = (sympy.zoo, sympy.nan, sympy.oo, -sympy.oo)


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def _coordinate(coord) -> sympy.Symbol:
    if coord in ("x", x):
        return x
    if coord in ("y", y):
        return y
    raise ValueError(f"unknown coordinate {coord!r}")


def is_rational_fragment(e: sympy.Expr) -> bool:
    """True when ``e`` is a rational function of coordinates and parameters."""
    e = sympy.sympify(e)
    if e.has(sympy.exp, sympy.log, sympy.Abs, sympy.E):
        return False
    return all(p.exp.is_Integer for p in e.atoms(sympy.Pow))


def transcendental_atoms(e: sympy.Expr) -> set:
    """exp/log/Abs nodes and non-integer powers that depend on a coordinate."""
    e = sympy.sympify(e)
    found = set(e.atoms(sympy.exp, sympy.log, sympy.Abs))
    found |= {p for p in e.atoms(sympy.Pow) if not p.exp.is_Integer}
    return {a for a in found if a.has(x) or a.has(y)}


def canonical(e: Any) -> sympy.Expr:
    e = sympy.sympify(e)
    if is_rational_fragment(e):
        return sympy.cancel(e)
    return sympy.cancel(sympy.powsimp(e))


def differentiate(e: Any, coord) -> sympy.Expr:
    return canonical(sympy.diff(sympy.sympify(e), _coordinate(coord)))


# ---------------------------------------------------------------------------
# substitution and evaluation
# ---------------------------------------------------------------------------

def _check_binding(sym: sympy.Symbol, value: sympy.Expr) -> None:
    if sym.is_nonzero and value.is_zero:
        raise ConstraintViolationError(f"{sym} is declared nonzero, cannot substitute 0")
    if sym.is_positive and value.is_positive is False:
        raise ConstraintViolationError(f"{sym} is declared positive, cannot substitute {value}")
    if sym.is_integer and value.is_integer is False:
        raise ConstraintViolationError(f"{sym} is declared integer, cannot substitute {value}")


def _resolve_bindings(e: sympy.Expr, bindings: Mapping) -> dict:
    by_name = {s.name: s for s in e.free_symbols}
    resolved = {}
    for key, value in bindings.items():
        sym = key if isinstance(key, sympy.Symbol) else by_name.get(str(key))
        if sym is None or sym not in e.free_symbols:
            continue
        value = sympy.sympify(value)
        _check_binding(sym, value)
        resolved[sym] = value
    return resolved


def substitute(e: Any, bindings: Mapping) -> sympy.Expr:
    """Simultaneous substitution of atoms (symbols or their names), then canonicalisation."""
    e = sympy.sympify(e)
    resolved = _resolve_bindings(e, bindings)
    if not resolved:
        return canonical(e)
    out = e.subs(resolved, simultaneous=True)
    if out.has(*_UNDEFINED):
        raise PoleError(f"substitution {resolved} makes {to_text(e)} undefined")
    return canonical(out)


def eval_at(e: Any, point: Sequence, bindings: Optional[Mapping] = None) -> Evaluation:
    e = sympy.sympify(e)
    if bindings:
        e = substitute(e, bindings)
    unbound = sorted(str(s) for s in e.free_symbols - set(COORDINATES))
    if unbound:
        raise UnboundParameterError(f"unbound parameter(s): {', '.join(unbound)}")
    px, py = (sympy.Rational(str(v)) for v in point)
    at = {x: px, y: py}
    e = canonical(e)
    if is_rational_fragment(e):
        num, den = sympy.fraction(e)
        d = den.xreplace(at)
        if d == 0:
            raise PoleError(f"{to_text(e)} has a pole at ({px}, {py})")
        return Evaluation(value=sympy.Rational(num.xreplace(at)) / d, exact=True)
    digits = get_settings().precision_digits
    value = e.xreplace(at)
    if value.has(*_UNDEFINED):
        raise PoleError(f"{to_text(e)} is undefined at ({px}, {py})")
    value = value.evalf(digits)
    if value.has(*_UNDEFINED) or not value.is_real:
        raise PoleError(f"{to_text(e)} has no real value at ({px}, {py})")
    return Evaluation(value=value, exact=False, digits=digits)


# ---------------------------------------------------------------------------
# deterministic sampling
# ---------------------------------------------------------------------------

def _random_rational(rng: random.Random) -> sympy.Rational:
    return sympy.Rational(rng.randint(-60, 60), rng.randint(7, 17))


def _sample_value(sym: sympy.Symbol, rng: random.Random) -> sympy.Rational:
    if sym.is_integer:
        return sympy.Integer(rng.randint(1, 4))
    if sym.is_positive:
        return sympy.Rational(rng.randint(1, 40), rng.randint(3, 11))
    num = 0
    while num == 0:
        num = rng.randint(-40, 40)
    return sympy.Rational(num, rng.randint(3, 11))


def sample_points(count: int, seed: Optional[int] = None) -> list[tuple[sympy.Rational, sympy.Rational]]:
    rng = random.Random(get_settings().sample_seed if seed is None else seed)
    return [(_random_rational(rng), _random_rational(rng)) for _ in range(count)]


def _samples(e: sympy.Expr, count: int, seed: int):
    """Yield (value, scale) of ``e`` at up to ``count`` usable random points, parameters sampled too."""
    free = sorted(e.free_symbols - set(COORDINATES), key=lambda s: s.name)
    terms = list(sympy.Add.make_args(e))
    f = sympy.lambdify([x, y, *free], e, modules="mpmath")
    g = sympy.lambdify([x, y, *free], terms, modules="mpmath")
    rng = random.Random(seed)
    used = attempts = 0
    while used < count and attempts < 4 * count:
        attempts += 1
        args = [_random_rational(rng), _random_rational(rng)] + [_sample_value(s, rng) for s in free]
        args = [mpmath.mpf(a.p) / a.q for a in args]
        try:
            value = f(*args)
            scale = max([mpmath.mpf(1)] + [abs(t) for t in g(*args)])
        except (ZeroDivisionError, ValueError, OverflowError, TypeError):
            continue
        if not mpmath.isfinite(abs(value)) or not mpmath.isfinite(scale):
            continue
        used += 1
        yield value, scale


def _sampled_is_zero(e: sympy.Expr) -> Verdict:
    s = get_settings()
    zero = True
    used = 0
    with mpmath.workdps(s.precision_digits):
        tol = mpmath.mpf(10) ** (-s.zero_tolerance_digits)
        for value, scale in _samples(e, s.zero_test_samples, s.sample_seed):
            used += 1
            if abs(value) > tol * scale:
                zero = False
                break
    if used == 0:
        raise UnsupportedExpressionError(f"no sample point in the real domain of {to_text(e)}")
    logger.debug(f"sampled zero test ({used} points) for {to_text(e)}: {zero}")
    return Verdict(holds=zero, certainty=Certainty.SAMPLED, samples=used)


def sample_signs(e: Any) -> set[int]:
    """Signs (-1, 0, 1) taken by ``e`` over the deterministic sample points."""
    e = canonical(e)
    if not e.free_symbols:
        return {int(sympy.sign(e))}
    s = get_settings()
    signs = set()
    with mpmath.workdps(s.precision_digits):
        tol = mpmath.mpf(10) ** (-s.zero_tolerance_digits)
        for value, scale in _samples(e, s.zero_test_samples, s.sample_seed):
            v = mpmath.re(value)
            signs.add(0 if abs(v) <= tol * scale else (1 if v > 0 else -1))
    return signs


# ---------------------------------------------------------------------------
# zero testing
# ---------------------------------------------------------------------------

def _rewrite(e: sympy.Expr) -> sympy.Expr:
    e = sympy.powsimp(sympy.expand(e), combine="exp")
    return sympy.expand_log(e, force=False)


def is_zero(e: Any) -> Verdict:
    e = canonical(e)
    if e == 0:
        return Verdict.proved_true()
    if is_rational_fragment(e):
        return Verdict.proved_false()
    r = canonical(_rewrite(e))
    if r == 0:
        return Verdict.proved_true()
    if is_rational_fragment(r):
        return Verdict.proved_false()
    verdict = _sampled_is_zero(r)
    logger.warning(f"transcendental zero test fell back to sampling: {verdict.zero_tag} for {to_text(e)}")
    return verdict


def all_zero(exprs: Iterable) -> Verdict:
    return Verdict.all_of(is_zero(e) for e in exprs)


def sqrt_abs(e: Any) -> sympy.Expr:
    """sqrt(|e|) with perfect-square factors pulled out of the root."""
    e = canonical(e)
    num, den = sympy.fraction(e)
    return canonical(_sqrt_abs_polynomial(num) / _sqrt_abs_polynomial(den))


def _sqrt_abs_polynomial(p: sympy.Expr) -> sympy.Expr:
    coeff, factors = sympy.factor_list(p)
    out = sympy.sqrt(sympy.Abs(coeff))
    rest = sympy.Integer(1)
    for f, m in factors:
        q, r = divmod(m, 2)
        a = f if (f.is_nonnegative or q % 2 == 0) else sympy.Abs(f)
        out *= a ** q
        if r:
            rest *= f if f.is_nonnegative else sympy.Abs(f)
    return out * sympy.sqrt(rest)


# ---------------------------------------------------------------------------
# constant linear relations
# ---------------------------------------------------------------------------

def normalize_vector(v: Sequence) -> tuple:
    """Scale so that the first nonzero entry is 1."""
    v = [canonical(a) for a in v]
    lead = next((a for a in v if a != 0), None)
    if lead is None:
        return tuple(v)
    return tuple(canonical(a / lead) for a in v)


def _coefficient_equations(combo: sympy.Expr) -> Optional[list]:
    num = sympy.expand(sympy.numer(sympy.together(combo)))
    gens = {a: sympy.Dummy(f"g{i}") for i, a in enumerate(sorted(transcendental_atoms(num), key=sympy.default_sort_key))}
    core = num.xreplace(gens)
    try:
        poly = sympy.Poly(core, x, y, *gens.values())
    except sympy.PolynomialError:
        return None
    return [c for c in poly.coeffs() if c != 0]


def _sampled_equations(combo: sympy.Expr, unknowns: int) -> list:
    s = get_settings()
    count = max(s.independence_samples, 2 * unknowns + 4)
    rng = random.Random(s.sample_seed + 1)
    equations = []
    attempts = 0
    while len(equations) < count and attempts < 10 * count:
        attempts += 1
        value = combo.xreplace({x: _random_rational(rng), y: _random_rational(rng)})
        if value.has(*_UNDEFINED):
            continue
        equations.append(sympy.expand(value))
    return equations


def constant_relations(columns: Sequence[Sequence[Any]]) -> list[tuple]:
    """
    Basis of the constant vectors ``v`` with ``sum_j v[j] * columns[j] == 0``
    identically in x and y (every column is a list of components of equal length).
    Entries may depend on parameters; the basis is normalised with ``normalize_vector``.
    """
    n = len(columns)
    if n == 0:
        return []
    unknowns = sympy.symbols(f"k0:{n}", cls=sympy.Dummy)
    equations = []
    sampled = False
    for comp in range(len(columns[0])):
        combo = sympy.Add(*[u * sympy.sympify(col[comp]) for u, col in zip(unknowns, columns)])
        eqs = _coefficient_equations(combo)
        if eqs is None:
            sampled = True
            eqs = _sampled_equations(combo, n)
        equations.extend(eqs)
    if not equations:
        return [normalize_vector(row) for row in sympy.eye(n).tolist()]
    matrix, _ = sympy.linear_eq_to_matrix(equations, unknowns)
    matrix = matrix.applyfunc(canonical)
    vectors = [normalize_vector(list(v)) for v in matrix.nullspace(iszerofunc=lambda a: canonical(a) == 0)]
    if sampled:
        logger.warning(f"constant relations among {n} columns solved from sample points")
        vectors = [v for v in vectors if _relation_holds(columns, v)]
    return vectors


def _relation_holds(columns: Sequence[Sequence[Any]], v: Sequence) -> bool:
    comps = len(columns[0])
    return all_zero(sum(a * sympy.sympify(col[c]) for a, col in zip(v, columns)) for c in range(comps)).holds


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

class GrammarPrinter(StrPrinter):
    """Prints expressions in the input grammar (``^`` powers, sqrt, exp(1) for e)."""

    _default_settings = dict(StrPrinter._default_settings, order="grlex")

    def _pow_text(self, base, n) -> str:
        b = self.parenthesize(base, PRECEDENCE["Pow"], strict=True)
        return b if n == 1 else f"{b}^{n}"

    def _print_Pow(self, expr, rational=False):
        base, exp = expr.as_base_exp()
        if exp.is_Integer:
            if exp.is_negative:
                return f"1/{self._pow_text(base, -exp)}"
            return self._pow_text(base, exp)
        if exp.is_Rational and exp.q == 2:
            root = f"sqrt({self._print(base)})"
            n = abs(exp.p)
            text = root if n == 1 else f"{root}^{n}"
            return f"1/{text}" if exp.p < 0 else text
        raise UnsupportedExpressionError(f"power {expr} is outside the expression grammar")

    def _print_Exp1(self, expr):
        return "exp(1)"

    def _print_Abs(self, expr):
        return f"sqrt(({self._print(expr.args[0])})^2)"

    def _print_Float(self, expr):
        raise UnsupportedExpressionError(f"floating-point constant {expr} in an exact expression")


_printer = GrammarPrinter()


def to_text(e: Any) -> str:
    return _printer.doprint(sympy.sympify(e))
