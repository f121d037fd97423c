# planelie/services/casimir.py
"""
Casimir tensor fields: push a quadratic Casimir element through the
realisation of the algebra by vector fields, test invariance, invert to a
metric and take its Hodge unit as a symplectic form.
"""
import logging
from typing import Optional

from planelie.core.errors import DimensionMismatchError
from planelie.models.algebra import CasimirElement, LieAlgebraPresentation, StructureConstants
from planelie.models.casimir import CasimirMetricResult, CasimirSource, InvarianceCheck
from planelie.models.fields import ContraTensor2
from planelie.services import liealg
from planelie.services.expr import canonical, is_zero
from planelie.services.geom import hodge_unit, invert, lie_derivative_contra, lie_derivative_cov

logger = logging.getLogger(__name__)


def upsilon(C: CasimirElement, V: LieAlgebraPresentation) -> ContraTensor2:
    """sum_ij C[i][j] X_i (x) X_j, component-wise."""
    if C.dimension != V.dimension:
        raise DimensionMismatchError(f"Casimir of size {C.dimension} for a basis of {V.dimension} fields")
    n = V.dimension

    def component(mu: int, nu: int):
        return canonical(sum(
            C.matrix[i, j] * V[i].components[mu] * V[j].components[nu]
            for i in range(n) for j in range(n) if C.matrix[i, j] != 0
        ))

    return ContraTensor2(component(0, 0), component(0, 1), component(1, 1))


def casimir_tensor_report(
    V: LieAlgebraPresentation, C: CasimirElement, source: CasimirSource = CasimirSource.GIVEN
) -> CasimirMetricResult:
    """Casimir tensor field of ``C`` and, when it is nondegenerate, its metric and Hodge unit."""
    G = upsilon(C, V)
    det = G.det()
    det_zero = is_zero(det)
    warnings = []
    if det_zero.holds:
        checks = tuple(
            InvarianceCheck(label=label, tensor=lie_derivative_contra(X, G).is_zero())
            for label, X in zip(V.labels, V)
        )
        logger.info(f"Casimir {C.text()} gives a degenerate tensor field")
        return CasimirMetricResult(
            casimir=C, source=source, tensor=G, det=det, det_verdict=det_zero.negated(), invariance=checks
        )
    if not det_zero.proved:
        warnings.append(f"det G is only {det_zero.zero_tag}")
    g = invert(G)
    omega = hodge_unit(g)
    checks = tuple(
        InvarianceCheck(
            label=label,
            tensor=lie_derivative_contra(X, G).is_zero(),
            metric=lie_derivative_cov(X, g).is_zero(),
        )
        for label, X in zip(V.labels, V)
    )
    return CasimirMetricResult(
        casimir=C,
        source=source,
        tensor=G,
        det=det,
        det_verdict=det_zero.negated(),
        metric=g,
        symplectic=omega,
        invariance=checks,
        warnings=tuple(warnings),
    )


def casimir_candidates(c: StructureConstants) -> list[tuple[CasimirElement, CasimirSource]]:
    """The solved Casimir basis, plus the inverse Killing form when it is semisimple and new."""
    found = [(C, CasimirSource.SOLVED) for C in liealg.quadratic_casimirs(c)]
    kappa = liealg.killing_form(c)
    if liealg.is_semisimple(kappa):
        inverse = liealg.inverse_killing_casimir(kappa)
        if not any(liealg.proportional(inverse, C) for C, _ in found):
            found.append((inverse, CasimirSource.INVERSE_KILLING))
    return found


def casimir_metric(
    V: LieAlgebraPresentation, c: Optional[StructureConstants] = None
) -> list[CasimirMetricResult]:
    c = c or liealg.structure_constants(V)
    results = [casimir_tensor_report(V, C, source) for C, source in casimir_candidates(c)]
    special = [
        f"more invariant symmetric tensors at {p} = {value} ({dimension}); results hold for generic {p}"
        for p, value, dimension in liealg.casimir_exceptional_values(c)
    ]
    if special:
        results = [r.model_copy(update={"warnings": r.warnings + tuple(special)}) for r in results]
    logger.info(
        f"{len(results)} Casimir tensor field(s), {sum(not r.degenerate for r in results)} nondegenerate"
    )
    return results


def nondegenerate_invariant(results: list[CasimirMetricResult]) -> Optional[CasimirMetricResult]:
    return next((r for r in results if not r.degenerate and r.all_invariant), None)
