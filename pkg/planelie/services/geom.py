# planelie/services/geom.py
"""
Tensor calculus on the plane: brackets, Lie derivatives of symmetric
2-tensors, conformal and Killing tests, inversion, the Hodge unit, scalar
curvature (R = 2K), orthogonality and local Hamiltonianity.
"""
import logging
from typing import Any, Optional, Union

import sympy

from planelie.core.errors import DegenerateTensorError, HypothesesNotMetError
from planelie.models.fields import (
    REFERENCE_METRICS,
    ConformalRatio,
    ContraTensor2,
    CovTensor2,
    Sign,
    TwoForm,
    VectorField,
)
from planelie.models.verdict import Verdict
from planelie.services.expr import (
    canonical,
    differentiate,
    is_zero,
    sample_signs,
    sqrt_abs,
    x,
    y,
)

logger = logging.getLogger(__name__)


def apply(X: VectorField, f: Any) -> sympy.Expr:
    """Derivative of the scalar ``f`` along ``X``."""
    return canonical(X.xx * differentiate(f, x) + X.yy * differentiate(f, y))


def bracket(X: VectorField, Y: VectorField) -> VectorField:
    return VectorField(apply(X, Y.xx) - apply(Y, X.xx), apply(X, Y.yy) - apply(Y, X.yy))


def wedge_det(X: VectorField, Y: VectorField) -> sympy.Expr:
    return canonical(X.xx * Y.yy - X.yy * Y.xx)


def _jacobian(X: VectorField) -> sympy.Matrix:
    """J[a, m] = d_m X^a."""
    return sympy.Matrix([[differentiate(c, x), differentiate(c, y)] for c in X.components])


def lie_derivative_cov(X: VectorField, g: CovTensor2) -> CovTensor2:
    m = g.matrix()
    J = _jacobian(X)
    out = m.applyfunc(lambda a: apply(X, a)) + J.T * m + m * J
    return CovTensor2.from_matrix(out)


def lie_derivative_contra(X: VectorField, G: ContraTensor2) -> ContraTensor2:
    m = G.matrix()
    J = _jacobian(X)
    out = m.applyfunc(lambda a: apply(X, a)) - J * m - m * J.T
    return ContraTensor2.from_matrix(out)


def nondegeneracy(t: Union[CovTensor2, ContraTensor2]) -> Verdict:
    """Verdict on ``det t != 0``; a zero determinant raises."""
    verdict = is_zero(t.det())
    if verdict.holds:
        raise DegenerateTensorError(f"tensor {t.text()} is degenerate ({verdict.zero_tag} determinant)")
    if not verdict.proved:
        logger.warning(f"determinant of {t.text()} is only {verdict.zero_tag}")
    return verdict.negated()


def conformal_check(X: VectorField, g: CovTensor2) -> tuple[Optional[sympy.Expr], Verdict]:
    """
    Candidate factor from the first component of ``g`` that is not zero, and
    the verdict on the full residual ``L_X g - f g`` vanishing.
    """
    nondegeneracy(g)
    L = lie_derivative_cov(X, g)
    for lc, gc in zip(L.components, g.components):
        if not is_zero(gc).holds:
            f = canonical(lc / gc)
            break
    residual = L - g.scaled(f)
    verdict = residual.is_zero()
    return (f if verdict.holds else None), verdict


def conformal_factor(X: VectorField, g: CovTensor2) -> Optional[sympy.Expr]:
    return conformal_check(X, g)[0]


def is_killing(X: VectorField, g: CovTensor2) -> Verdict:
    return lie_derivative_cov(X, g).is_zero()


def invert(t: Union[CovTensor2, ContraTensor2]) -> Union[CovTensor2, ContraTensor2]:
    """Exact 2x2 inverse; covariant and contravariant tensors map to each other."""
    nondegeneracy(t)
    a, b, c = t.components
    d = t.det()
    inverse = (canonical(c / d), canonical(-b / d), canonical(a / d))
    if isinstance(t, ContraTensor2):
        return CovTensor2(*inverse)
    return ContraTensor2(*inverse)


def hodge_unit(g: CovTensor2) -> TwoForm:
    """sqrt(|det g|) dx^dy, with dx^dy positively oriented."""
    nondegeneracy(g)
    return TwoForm(sqrt_abs(g.det()))


def christoffel(g: CovTensor2) -> list[list[list[sympy.Expr]]]:
    """gamma[k][i][j] = Gamma^k_ij of the Levi-Civita connection."""
    coords = (x, y)
    m = g.matrix()
    inv = invert(g).matrix()
    dg = [[[differentiate(m[i, j], coords[k]) for k in range(2)] for j in range(2)] for i in range(2)]
    return [
        [
            [
                canonical(sum(inv[k, l] * (dg[l][j][i] + dg[l][i][j] - dg[i][j][l]) for l in range(2)) / 2)
                for j in range(2)
            ]
            for i in range(2)
        ]
        for k in range(2)
    ]


def scalar_curvature(g: CovTensor2) -> sympy.Expr:
    """Scalar curvature with the convention R = 2K (K the Gaussian curvature)."""
    coords = (x, y)
    gamma = christoffel(g)
    inv = invert(g).matrix()
    r = range(2)

    def ricci(i, j):
        return (
            sum(differentiate(gamma[k][i][j], coords[k]) for k in r)
            - sum(differentiate(gamma[k][i][k], coords[j]) for k in r)
            + sum(gamma[k][k][l] * gamma[l][i][j] for k in r for l in r)
            - sum(gamma[k][j][l] * gamma[l][i][k] for k in r for l in r)
        )

    return canonical(sum(inv[i, j] * ricci(i, j) for i in r for j in r))


def pairing(g: CovTensor2, X: VectorField, Y: VectorField) -> sympy.Expr:
    return canonical(
        g.gxx * X.xx * Y.xx + g.gxy * (X.xx * Y.yy + X.yy * Y.xx) + g.gyy * X.yy * Y.yy
    )


def perpendicular_generator(Y: VectorField, g: CovTensor2) -> VectorField:
    """A generator of the g-orthogonal complement of the direction of ``Y``."""
    if Y.is_zero().holds:
        raise HypothesesNotMetError("the zero field spans no distribution")
    a = g.gxx * Y.xx + g.gxy * Y.yy
    b = g.gxy * Y.xx + g.gyy * Y.yy
    return VectorField(-b, a)


def is_locally_hamiltonian(X: VectorField, omega: TwoForm) -> Verdict:
    """d(i_X omega) = 0, i.e. the divergence of w X vanishes for omega = w dx^dy."""
    w = omega.coefficient
    if is_zero(w).holds:
        raise HypothesesNotMetError("the 2-form vanishes identically")
    return is_zero(differentiate(w * X.xx, x) + differentiate(w * X.yy, y))


def conformal_ratio(g1: CovTensor2, g2: CovTensor2) -> Optional[ConformalRatio]:
    """The scalar s with g1 = s g2, if there is one, and its sign over the sample points."""
    nondegeneracy(g2)
    for a, b in zip(g1.components, g2.components):
        if not is_zero(b).holds:
            s = canonical(a / b)
            break
    verdict = (g1 - g2.scaled(s)).is_zero()
    if not verdict.holds:
        return None
    signs = sample_signs(s) - {0}
    if signs == {1}:
        sign = Sign.POSITIVE
    elif signs == {-1}:
        sign = Sign.NEGATIVE
    else:
        sign = Sign.INDEFINITE
    return ConformalRatio(ratio=s, sign=sign, verdict=verdict)


def commute_or_orthogonal(g: CovTensor2, Y: VectorField, X: VectorField) -> Verdict:
    return Verdict.any_of([bracket(Y, X).is_zero(), is_zero(pairing(g, Y, X))])


def conformal_class(basis) -> list[str]:
    """Names of the reference metrics w.r.t. which every basis element is conformal."""
    found = []
    for name, g in REFERENCE_METRICS.items():
        if all(conformal_check(X, g)[1].holds for X in basis):
            found.append(name)
    logger.debug(f"conformal class: {found}")
    return found


def is_definite(g: CovTensor2) -> bool:
    """det g > 0 on every sample point."""
    return sample_signs(g.det()) == {1}
