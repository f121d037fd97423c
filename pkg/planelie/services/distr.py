# planelie/services/distr.py
"""
Invariant rank-one distributions, the generic domain of a realisation and the
constant-frame Killing obstruction.

A distribution spanned by Y is invariant under V when [X, Y] ^ Y = 0 for every
basis element X. For a commuting, independent pair X_i, X_j the condition on
the constant pencil l1 X_i + l2 X_j is a family of binary quadratic forms, so
the invariant members are the common real roots of those forms.
"""
import logging
from itertools import combinations
from typing import Iterable, Optional, Sequence

import sympy

from planelie.core.config import get_settings
from planelie.core.errors import HypothesesNotMetError, PoleError
from planelie.models.algebra import LieAlgebraPresentation
from planelie.models.distributions import (
    LAMBDA_X,
    LAMBDA_Y,
    CommutingPairs,
    DomainReport,
    ObstructionResult,
    PencilSolution,
    Provenance,
    Rank1Distribution,
)
from planelie.models.fields import CovTensor2, VectorField
from planelie.models.verdict import Verdict
from planelie.services.expr import (
    COORDINATES,
    canonical,
    constant_relations,
    eval_at,
    is_zero,
    normalize_vector,
    sample_points,
    sample_signs,
    to_text,
)
from planelie.services.geom import bracket, lie_derivative_cov, wedge_det

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# invariance
# ---------------------------------------------------------------------------

def is_invariant(Y: VectorField, V: LieAlgebraPresentation) -> Verdict:
    if Y.is_zero().holds:
        raise HypothesesNotMetError("the zero field spans no distribution")
    return Verdict.all_of(is_zero(wedge_det(bracket(X, Y), Y)) for X in V)


def commuting_pairs(V: LieAlgebraPresentation) -> CommutingPairs:
    independent, dependent = [], []
    for i, j in combinations(range(V.dimension), 2):
        if not bracket(V[i], V[j]).is_zero().holds:
            continue
        if is_zero(wedge_det(V[i], V[j])).holds:
            dependent.append((i, j))
        else:
            independent.append((i, j))
    return CommutingPairs(independent=tuple(independent), dependent=tuple(dependent))


def _require_independent(Y1: VectorField, Y2: VectorField) -> None:
    if is_zero(wedge_det(Y1, Y2)).holds:
        raise HypothesesNotMetError(f"{Y1.text()} and {Y2.text()} are parallel")


def _require_commuting_frame(Y1: VectorField, Y2: VectorField) -> None:
    if not bracket(Y1, Y2).is_zero().holds:
        raise HypothesesNotMetError(f"[{Y1.text()}, {Y2.text()}] does not vanish")
    _require_independent(Y1, Y2)


def _pencil_forms(V: LieAlgebraPresentation, i: int, j: int) -> list[list[sympy.Expr]]:
    """Per basis element, the coefficients of l1^2, l1 l2, l2^2 in [X, l1 X_i + l2 X_j] ^ (l1 X_i + l2 X_j)."""
    Xi, Xj = V[i], V[j]
    rows = []
    for X in V:
        A, B = bracket(X, Xi), bracket(X, Xj)
        rows.append([
            wedge_det(A, Xi),
            canonical(wedge_det(A, Xj) + wedge_det(B, Xi)),
            wedge_det(B, Xj),
        ])
    return rows


def _real_points(form: sympy.Expr) -> list[tuple[sympy.Expr, sympy.Expr]]:
    """Real projective roots (l1 : l2) of a binary form in LAMBDA_X, LAMBDA_Y."""
    points = []
    _, factors = sympy.factor_list(form, LAMBDA_X, LAMBDA_Y)
    for f, _ in factors:
        poly = sympy.Poly(f, LAMBDA_X, LAMBDA_Y)
        degree = poly.total_degree()
        if degree == 1:
            a = poly.coeff_monomial(LAMBDA_X)
            b = poly.coeff_monomial(LAMBDA_Y)
            points.append((b, -a))
        elif degree == 2:
            A = poly.coeff_monomial(LAMBDA_X**2)
            B = poly.coeff_monomial(LAMBDA_X * LAMBDA_Y)
            C = poly.coeff_monomial(LAMBDA_Y**2)
            disc = canonical(B**2 - 4 * A * C)
            signs = sample_signs(disc)
            if signs == {-1}:
                continue
            if disc.free_symbols or signs != {1}:
                logger.warning(f"real roots of {to_text(f)} depend on the parameters, skipped")
                continue
            for s in (1, -1):
                points.append((canonical((-B + s * sympy.sqrt(disc)) / (2 * A)), sympy.Integer(1)))
        elif degree > 2:
            logger.warning(f"pencil factor {to_text(f)} of degree {degree} skipped")
    out = []
    for p in points:
        p = normalize_vector(p)
        if p not in out:
            out.append(p)
    return out


def constant_combination_invariants(V: LieAlgebraPresentation, i: int, j: int) -> PencilSolution:
    """Invariant members of the pencil spanned by the commuting, independent pair (X_i, X_j)."""
    _require_commuting_frame(V[i], V[j])
    rows = _pencil_forms(V, i, j)
    columns = [[row[m] for row in rows] for m in range(3)]
    kernel = constant_relations(columns)
    if len(kernel) == 3:
        logger.info(f"every constant combination of {V.labels[i]}, {V.labels[j]} is invariant")
        return PencilSolution(pair=(i, j), full_line=True)
    if not kernel:
        return PencilSolution(pair=(i, j))
    annihilators = sympy.Matrix(kernel).nullspace()
    monomials = (LAMBDA_X**2, LAMBDA_X * LAMBDA_Y, LAMBDA_Y**2)
    forms = [sympy.expand(sum(a * m for a, m in zip(v, monomials))) for v in annihilators]
    common = sympy.gcd_list(forms) if len(forms) > 1 else forms[0]
    points = _real_points(common) if common.has(LAMBDA_X, LAMBDA_Y) else []
    logger.debug(f"pencil {V.labels[i]}, {V.labels[j]}: common form {to_text(common)}, {len(points)} real point(s)")
    return PencilSolution(pair=(i, j), points=tuple(points))


def _pencil_member(V: LieAlgebraPresentation, pair: tuple[int, int], Y: VectorField) -> bool:
    """True when the direction of Y is that of a constant combination of the pair."""
    i, j = pair
    return bool(constant_relations([[wedge_det(V[i], Y)], [wedge_det(V[j], Y)]]))


def _already_found(found: list[Rank1Distribution], V: LieAlgebraPresentation, Y: VectorField) -> bool:
    for D in found:
        if D.full_line:
            if _pencil_member(V, D.pair, Y):
                return True
        elif is_zero(wedge_det(D.generator, Y)).holds:
            return True
    return False


def find_invariant_distributions(
    V: LieAlgebraPresentation, candidates: Iterable[VectorField] = ()
) -> list[Rank1Distribution]:
    """
    Invariant distributions from the pencils of commuting independent pairs,
    from the basis elements themselves and from the extra ``candidates``,
    one generator per distinct distribution.
    """
    found: list[Rank1Distribution] = []
    pairs = commuting_pairs(V).independent
    # whole lines first so that their members are recognised as duplicates
    solutions = [constant_combination_invariants(V, i, j) for i, j in pairs]
    for s in solutions:
        if not s.full_line:
            continue
        i, j = s.pair
        Y = V[i].scaled(LAMBDA_X) + V[j].scaled(LAMBDA_Y)
        if not _already_found(found, V, Y):
            found.append(Rank1Distribution(
                generator=Y, provenance=Provenance.PENCIL, pair=s.pair, coefficients=(LAMBDA_X, LAMBDA_Y), full_line=True
            ))
    for s in solutions:
        i, j = s.pair
        for a, b in s.points:
            Y = V[i].scaled(a) + V[j].scaled(b)
            if is_invariant(Y, V).holds and not _already_found(found, V, Y):
                found.append(Rank1Distribution(generator=Y, provenance=Provenance.PENCIL, pair=s.pair, coefficients=(a, b)))
    for X in V:
        if is_invariant(X, V).holds and not _already_found(found, V, X):
            found.append(Rank1Distribution(generator=X, provenance=Provenance.BASIS))
    for Y in candidates:
        if Y.is_zero().holds:
            continue
        if not is_invariant(Y, V).holds:
            logger.debug(f"candidate {Y.text()} is not invariant")
        elif not _already_found(found, V, Y):
            found.append(Rank1Distribution(generator=Y, provenance=Provenance.CANDIDATE))
    logger.info(f"{len(found)} invariant distribution(s) found")
    return found


# ---------------------------------------------------------------------------
# generic domain
# ---------------------------------------------------------------------------

def _removable_factors(e: sympy.Expr) -> list[sympy.Expr]:
    """Factors of the numerator of ``e`` that can vanish on the plane."""
    return _vanishing_factors(sympy.numer(sympy.together(e)))


def _pole_factors(e: sympy.Expr) -> list[sympy.Expr]:
    """Factors of the denominator of ``e`` that can vanish on the plane."""
    return _vanishing_factors(sympy.denom(sympy.together(e)))


def _vanishing_factors(e: sympy.Expr) -> list[sympy.Expr]:
    _, factors = sympy.factor_list(e)
    keep = []
    for f, _ in factors:
        if not f.has(*COORDINATES):
            continue
        if f.func is sympy.exp or f.is_positive:
            continue
        keep.append(f)
    return keep


def _merge_factors(*groups: Sequence[sympy.Expr]) -> tuple[sympy.Expr, ...]:
    """Union of factor lists, identifying factors that agree up to a constant."""
    merged: list[sympy.Expr] = []
    for f in (f for group in groups for f in group):
        if not any(not canonical(f / g).has(*COORDINATES) for g in merged):
            merged.append(f)
    return tuple(merged)


def _product(factors: Sequence[sympy.Expr]) -> sympy.Expr:
    return sympy.Mul(*factors) if factors else sympy.Integer(1)


def generic_domain(V: LieAlgebraPresentation) -> DomainReport:
    """
    Open set where the fields span their generic rank: the complement of the
    common zeros of the 2x2 minors (of the components when the rank is one),
    with the poles of the components removed as well.
    """
    poles = _merge_factors(*(_pole_factors(c) for X in V for c in X.components))
    minors = tuple(wedge_det(V[i], V[j]) for i, j in combinations(range(V.dimension), 2))
    nonzero = [m for m in minors if not is_zero(m).holds]
    if nonzero:
        rank, generators = 2, nonzero
    else:
        generators = [c for X in V for c in X.components if not is_zero(c).holds]
        rank = 1 if generators else 0
    if not generators:
        return DomainReport(minors=minors, rank=0, singular_factors=poles, pole_factors=poles)
    parts = [_product(_removable_factors(g)) for g in generators]
    common = sympy.gcd_list(parts) if len(parts) > 1 else parts[0]
    zeros = _removable_factors(common) if common.has(*COORDINATES) else []
    factors = _merge_factors(zeros, poles)
    # an isolated common zero can only hide where no cofactor is free of zeros
    exact = any(not _removable_factors(sympy.cancel(p / common)) for p in parts)
    report = DomainReport(minors=minors, rank=rank, singular_factors=factors, pole_factors=poles, exact=exact)
    logger.info(f"generic rank {rank} on {report.description}{'' if exact else ' (isolated points not excluded)'}")
    return report


def rank_at(V: LieAlgebraPresentation, point: Sequence) -> int:
    """Numeric rank of the basis at ``point``."""
    s = get_settings()
    tol = 10.0 ** (-s.zero_tolerance_digits // 2)
    for i, j in combinations(range(V.dimension), 2):
        if abs(float(eval_at(wedge_det(V[i], V[j]), point).value)) > tol:
            return 2
    for X in V:
        if any(abs(float(eval_at(c, point).value)) > tol for c in X.components):
            return 1
    return 0


def domain_spot_check(V: LieAlgebraPresentation, report: DomainReport) -> list[tuple]:
    """Sample points off the singular locus where the rank differs from the generic one (empty when consistent)."""
    if any(c.free_symbols - set(COORDINATES) for X in V for c in X.components):
        logger.info("rank spot check skipped: the basis has unbound parameters")
        return []
    s = get_settings()
    locus = _product(report.singular_factors)
    mismatches = []
    checked = 0
    for point in sample_points(4 * s.domain_rank_points, seed=s.sample_seed + 7):
        if checked >= s.domain_rank_points:
            break
        if report.singular_factors and eval_at(locus, point).value == 0:
            continue
        try:
            r = rank_at(V, point)
        except PoleError:
            continue
        checked += 1
        if r != report.rank:
            mismatches.append((point, r))
    return mismatches


# ---------------------------------------------------------------------------
# Killing obstruction in a commuting frame
# ---------------------------------------------------------------------------

def _coframe(Y1: VectorField, Y2: VectorField) -> tuple[tuple[sympy.Expr, sympy.Expr], tuple[sympy.Expr, sympy.Expr]]:
    """Rows of F^-1 for F with columns Y1, Y2: the dual coframe theta^1, theta^2."""
    d = wedge_det(Y1, Y2)
    theta1 = (canonical(Y2.yy / d), canonical(-Y2.xx / d))
    theta2 = (canonical(-Y1.yy / d), canonical(Y1.xx / d))
    return theta1, theta2


def _coframe_tensors(Y1: VectorField, Y2: VectorField) -> tuple[CovTensor2, CovTensor2, CovTensor2]:
    """theta1 theta1, theta1 theta2 + theta2 theta1, theta2 theta2."""
    (a1, b1), (a2, b2) = _coframe(Y1, Y2)
    return (
        CovTensor2(a1 * a1, a1 * b1, b1 * b1),
        CovTensor2(2 * a1 * a2, a1 * b2 + a2 * b1, 2 * b1 * b2),
        CovTensor2(a2 * a2, a2 * b2, b2 * b2),
    )


def frame_metric(Y1: VectorField, Y2: VectorField, constants: Sequence) -> CovTensor2:
    """The tensor with g(Y_k, Y_l) = c_kl for constants (c11, c12, c22)."""
    out = CovTensor2(0, 0, 0)
    for c, T in zip(constants, _coframe_tensors(Y1, Y2)):
        out = out + T.scaled(c)
    return out


def _gram_det(v: Sequence) -> sympy.Expr:
    return canonical(v[0] * v[2] - v[1] ** 2)


def _trial_combinations(kernel: list[tuple]) -> list[tuple]:
    """Single basis vectors, pairwise sums and the total, in that order."""
    trials = list(kernel)
    trials += [tuple(a + b for a, b in zip(u, w)) for u, w in combinations(kernel, 2)]
    if len(kernel) > 2:
        trials.append(tuple(sum(col) for col in zip(*kernel)))
    return trials


def killing_obstruction_in_frame(
    V: LieAlgebraPresentation, Y1: VectorField, Y2: VectorField, pair: Optional[tuple[int, int]] = None
) -> ObstructionResult:
    """
    Metrics with constant components in the coframe dual to the independent
    frame (Y1, Y2) for which every basis element is Killing. Every solution is
    a Killing metric; only for a commuting frame does an empty (or degenerate)
    solution space rule Killing metrics out.
    """
    _require_independent(Y1, Y2)
    commuting = bracket(Y1, Y2).is_zero().holds
    tensors = _coframe_tensors(Y1, Y2)
    columns = [
        [c for X in V for c in lie_derivative_cov(X, T).components]
        for T in tensors
    ]
    kernel = constant_relations(columns)
    metrics = tuple(frame_metric(Y1, Y2, v) for v in kernel)
    ts = sympy.symbols(f"t0:{len(kernel)}", cls=sympy.Dummy)
    generic = [sum(t * v[m] for t, v in zip(ts, kernel)) for m in range(3)] if kernel else [0, 0, 0]
    admits = canonical(_gram_det(generic)) != 0
    witnesses, definite = [], []
    if admits:
        seen = []
        for v in _trial_combinations(kernel):
            det = _gram_det(v)
            if det == 0 or v in seen:
                continue
            seen.append(v)
            witnesses.append(frame_metric(Y1, Y2, v))
            definite.append(sample_signs(det) == {1})
    result = ObstructionResult(
        frame=(Y1, Y2),
        pair=pair,
        commuting=commuting,
        constants=tuple(kernel),
        metrics=metrics,
        admits_nondegenerate=admits,
        witnesses=tuple(witnesses),
        definite=tuple(definite),
    )
    logger.info(
        f"Killing obstruction over ({Y1.text()}, {Y2.text()}): dimension {result.dimension}, "
        f"{'nondegenerate solutions exist' if admits else 'no nondegenerate solution'}"
    )
    return result


def killing_obstruction_constant_frame(V: LieAlgebraPresentation, i: int, j: int) -> ObstructionResult:
    return killing_obstruction_in_frame(V, V[i], V[j], pair=(i, j))


def forced_generators(V: LieAlgebraPresentation) -> list[int]:
    """
    Indices i such that X_i commutes with a parallel X_j = f X_i while some
    basis element is independent of X_i. Every invariant distribution is then
    generated by X_i, and no nondegenerate metric has both X_i and f X_i Killing.
    """
    pairs = commuting_pairs(V).dependent
    out = []
    for i, j in pairs:
        if i in out:
            continue
        if any(not is_zero(wedge_det(V[i], X)).holds for X in V):
            out.append(i)
    return sorted(out)


def killing_triple_obstruction(V: LieAlgebraPresentation) -> Optional[tuple[int, int, int]]:
    """
    Indices (a, b, c) with [X_a, X_b] = [X_b, X_c] = 0, [X_a, X_c] != 0,
    X_b ^ X_c != 0 and X_a ^ X_c = 0; such a triple rules out Killing metrics.
    """
    n = V.dimension
    commute = {}
    for i, j in combinations(range(n), 2):
        commute[(i, j)] = commute[(j, i)] = bracket(V[i], V[j]).is_zero().holds
    for a in range(n):
        for c in range(n):
            if a == c or commute[(a, c)] or not is_zero(wedge_det(V[a], V[c])).holds:
                continue
            for b in range(n):
                if b in (a, c) or not commute[(a, b)] or not commute[(b, c)]:
                    continue
                if not is_zero(wedge_det(V[b], V[c])).holds:
                    logger.debug(f"Killing triple obstruction at {V.labels[a]}, {V.labels[b]}, {V.labels[c]}")
                    return a, b, c
    return None
