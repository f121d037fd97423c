# planelie/services/liealg.py
"""
Structure constants of a presented algebra, the Killing form, the Cartan
criterion, sl(2)/so(3) identification and quadratic Casimir elements.
"""
import logging
from typing import Sequence

import sympy

from planelie.core.errors import (
    DegenerateTensorError,
    DependentBasisError,
    DimensionMismatchError,
    HypothesesNotMetError,
    InconsistentInputError,
    NonConstantCoefficientsError,
    NotClosedError,
)
from planelie.models.algebra import (
    CasimirElement,
    IsoClass,
    KillingFormMatrix,
    LieAlgebraPresentation,
    StructureConstants,
)
from planelie.services.expr import canonical, constant_relations, is_zero, normalize_vector
from planelie.services.geom import bracket, wedge_det

logger = logging.getLogger(__name__)


def generic_rank(V: LieAlgebraPresentation) -> int:
    """Rank of the span of the basis at a generic point (0, 1 or 2)."""
    basis = list(V)
    for i, X in enumerate(basis):
        for Y in basis[i + 1:]:
            if not is_zero(wedge_det(X, Y)).holds:
                return 2
    return 1 if any(not X.is_zero().holds for X in basis) else 0


def structure_constants(V: LieAlgebraPresentation) -> StructureConstants:
    n = V.dimension
    columns = [X.components for X in V]
    zero = sympy.Integer(0)
    c = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b = bracket(V[i], V[j])
            relations = [v for v in constant_relations(columns + [b.components]) if v[n] != 0]
            if not relations:
                _raise_not_closed(V, i, j, b)
            v = relations[0]
            for k in range(n):
                coeff = canonical(-v[k] / v[n])
                c[i][j][k] = coeff
                c[j][i][k] = canonical(-coeff)
    logger.debug(f"structure constants of a {n}-dimensional algebra computed")
    return StructureConstants(c=c)


def _raise_not_closed(V: LieAlgebraPresentation, i: int, j: int, b) -> None:
    pair = (i + 1, j + 1)
    where = f"[{V.labels[i]}, {V.labels[j]}] = {b.text()}"
    rank = generic_rank(V)
    lead = next((X for X in V if not X.is_zero().holds), None)
    if rank == 2 or (lead is not None and is_zero(wedge_det(lead, b)).holds):
        raise NonConstantCoefficientsError(
            f"{where} lies in the span of the basis only with non-constant coefficients", pair, b.text()
        )
    raise NotClosedError(f"{where} is not in the span of the basis", pair, b.text())


def killing_form(c: StructureConstants) -> KillingFormMatrix:
    n = c.dimension
    ads = [c.ad(a) for a in range(n)]
    return KillingFormMatrix(matrix=sympy.Matrix(n, n, lambda a, b: canonical((ads[a] * ads[b]).trace())))


def is_semisimple(kappa: KillingFormMatrix) -> bool:
    """Cartan criterion."""
    return not is_zero(kappa.det()).holds


def inertia(m: sympy.Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a constant symmetric matrix by congruence diagonalisation."""
    m = sympy.Matrix(m).applyfunc(canonical)
    if m.free_symbols:
        raise HypothesesNotMetError("the signature of a parameter-dependent form is not determined")
    total = m.rows
    pos = neg = 0
    while m.rows:
        size = m.rows
        pivot = next((i for i in range(size) if m[i, i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(size) for j in range(size) if m[i, j] != 0), None)
            if pair is None:
                break
            i, j = pair
            E = sympy.eye(size)
            E[i, j] = 1
            m = E * m * E.T
            pivot = i
        p = m[pivot, pivot]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rest = [k for k in range(size) if k != pivot]
        m = sympy.Matrix(len(rest), len(rest), lambda a, b: m[rest[a], rest[b]] - m[rest[a], pivot] * m[pivot, rest[b]] / p)
    return pos, neg, total - pos - neg


def classify_3d_semisimple(kappa: KillingFormMatrix) -> IsoClass:
    if kappa.dimension != 3:
        raise DimensionMismatchError(f"expected a 3-dimensional algebra, got dimension {kappa.dimension}")
    pos, neg, _ = inertia(kappa.matrix)
    if pos + neg < 3:
        raise DegenerateTensorError("the Killing form is degenerate, the algebra is not semisimple")
    if neg == 3:
        return IsoClass.SO3
    if pos == 3:
        raise InconsistentInputError("a positive-definite Killing form cannot come from a real Lie algebra")
    return IsoClass.SL2


def ad_invariance_defect(C: CasimirElement, c: StructureConstants) -> list[sympy.Matrix]:
    """ad_k C + C ad_k^T for every basis index k; all vanish for a Casimir element."""
    if C.dimension != c.dimension:
        raise DimensionMismatchError(f"Casimir of size {C.dimension} for a {c.dimension}-dimensional algebra")
    m = sympy.Matrix(C.matrix)
    return [(c.ad(k) * m + m * c.ad(k).T).applyfunc(canonical) for k in range(c.dimension)]


def is_ad_invariant(C: CasimirElement, c: StructureConstants) -> bool:
    return all(d.is_zero_matrix for d in ad_invariance_defect(C, c))


def _invariance_system(c: StructureConstants) -> tuple[sympy.Matrix, list[tuple[int, int]]]:
    """Coefficient matrix of ad_k C + C ad_k^T = 0 in the upper-triangle entries of C."""
    n = c.dimension
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    unknowns = sympy.symbols(f"s0:{len(positions)}", cls=sympy.Dummy)
    C = sympy.zeros(n, n)
    for u, (i, j) in zip(unknowns, positions):
        C[i, j] = C[j, i] = u
    equations = []
    for k in range(n):
        ad = c.ad(k)
        for e in ad * C + C * ad.T:
            e = sympy.expand(e)
            if e != 0:
                equations.append(e)
    if not equations:
        return sympy.zeros(0, len(positions)), positions
    matrix, _ = sympy.linear_eq_to_matrix(equations, unknowns)
    return matrix.applyfunc(canonical), positions


def _is_zero_entry(a) -> bool:
    return canonical(a) == 0


def _kernel(matrix: sympy.Matrix) -> list[sympy.Matrix]:
    if matrix.rows == 0:
        return [sympy.eye(matrix.cols).col(k) for k in range(matrix.cols)]
    return matrix.nullspace(iszerofunc=_is_zero_entry)


def quadratic_casimirs(c: StructureConstants) -> list[CasimirElement]:
    """Basis of the ad-invariant symmetric matrices, first nonzero entry (row-major, upper triangle) equal to 1."""
    n = c.dimension
    matrix, positions = _invariance_system(c)
    out = []
    for v in _kernel(matrix):
        v = normalize_vector(list(v))
        m = sympy.zeros(n, n)
        for a, (i, j) in zip(v, positions):
            m[i, j] = m[j, i] = a
        out.append(CasimirElement(matrix=m))
    logger.debug(f"{len(out)} quadratic Casimir(s) for a {n}-dimensional algebra")
    return out


def casimir_exceptional_values(c: StructureConstants) -> list[tuple[sympy.Symbol, sympy.Expr, int]]:
    """
    Real values of a single structure parameter at which the ad-invariant
    symmetric matrices span more than they do generically, as
    (parameter, value, dimension). Away from these values the generic
    Casimir basis is complete.
    """
    matrix, _ = _invariance_system(c)
    params = sorted(matrix.free_symbols, key=lambda s: s.name)
    if not params:
        return []
    if len(params) > 1:
        logger.warning(f"Casimirs computed for generic {', '.join(p.name for p in params)} only")
        return []
    p = params[0]
    generic = len(_kernel(matrix))
    rank = matrix.cols - generic
    # rows of a generically nonsingular rank x rank minor; off its zeros the rank cannot drop
    rows: list[int] = []
    for i in range(matrix.rows):
        if len(rows) == rank:
            break
        if matrix.extract(rows + [i], list(range(matrix.cols))).rank(iszerofunc=_is_zero_entry) > len(rows):
            rows.append(i)
    sub = matrix.extract(rows, list(range(matrix.cols)))
    _, pivots = sub.rref(iszerofunc=_is_zero_entry)
    minor = canonical(sub.extract(list(range(len(rows))), list(pivots)).det())
    out = []
    for value in sympy.solve(sympy.numer(sympy.together(minor)), p):
        if value.is_real is False or value.free_symbols:
            continue
        dimension = len(_kernel(matrix.subs(p, value).applyfunc(canonical)))
        if dimension > generic:
            out.append((p, value, dimension))
    for sym, value, dimension in out:
        logger.warning(f"at {sym} = {value} there are {dimension} invariant symmetric tensors, generically {generic}")
    return out


def inverse_killing_casimir(kappa: KillingFormMatrix) -> CasimirElement:
    """kappa^-1 read as a symmetric tensor; a Casimir element of any semisimple algebra."""
    if not is_semisimple(kappa):
        raise DegenerateTensorError("the Killing form is degenerate")
    return CasimirElement(matrix=sympy.Matrix(kappa.matrix).inv().applyfunc(canonical))


def proportional(a: CasimirElement, b: CasimirElement) -> bool:
    """True when ``a`` is a constant multiple of ``b`` (``b`` nonzero)."""
    flat_a = list(a.matrix)
    flat_b = list(b.matrix)
    k = next((i for i, v in enumerate(flat_b) if v != 0), None)
    if k is None:
        return False
    ratio = canonical(flat_a[k] / flat_b[k])
    return all(canonical(p - ratio * q) == 0 for p, q in zip(flat_a, flat_b))


def change_basis(c: StructureConstants, P: Sequence[Sequence]) -> StructureConstants:
    """Structure constants in the basis e'_i = sum_a P[i][a] e_a."""
    P = sympy.Matrix(P)
    n = c.dimension
    if P.shape != (n, n):
        raise DimensionMismatchError(f"change of basis must be {n}x{n}, got {P.rows}x{P.cols}")
    if canonical(P.det()) == 0:
        raise DependentBasisError("change-of-basis matrix is singular")
    Q = P.inv()
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[i][j][k] = canonical(sum(
                    P[i, a] * P[j, b] * c[a][b][m] * Q[m, k]
                    for a in range(n) for b in range(n) for m in range(n)
                    if P[i, a] != 0 and P[j, b] != 0 and c[a][b][m] != 0
                ))
    return StructureConstants(c=out)
