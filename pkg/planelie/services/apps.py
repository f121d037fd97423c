# planelie/services/apps.py
"""
Two Lie systems carried end to end through the Casimir pipeline:

* the Milne-Pinney equation x'' = -omega(t)^2 x + c/x^3, written as a first
  order system on (x, y = x'), whose algebra is sl(2);
* the two-level Schroedinger equation projected to the Riemann sphere, whose
  algebra is so(3) acting on the plane by stereographic coordinates.

Both also back the erratum reports comparing printed closed forms with what the
pipeline computes.
"""
import logging
from typing import Optional, Union

import sympy

from planelie.core.errors import HypothesesNotMetError
from planelie.models.algebra import CasimirElement, LieAlgebraPresentation
from planelie.models.casimir import CasimirSource
from planelie.models.fields import CovTensor2, VectorField
from planelie.models.parameter import Constraint, Parameter
from planelie.models.systems import ErratumItem, ErratumReport, LieSystemDecomposition, SystemGeometry
from planelie.services import liealg
from planelie.services.casimir import casimir_metric, casimir_tensor_report, nondegenerate_invariant
from planelie.services.expr import to_text, x, y
from planelie.services.geom import is_killing, is_locally_hamiltonian, lie_derivative_cov, scalar_curvature

logger = logging.getLogger(__name__)

_R2 = 1 + x**2 + y**2


def _parameter_c(c: Union[None, Parameter, int, str, sympy.Rational]) -> Parameter:
    if isinstance(c, Parameter):
        return c
    return Parameter(name="c", constraint=Constraint.NONZERO, value=c)


def milne_pinney_system(c: Union[None, Parameter, int, str, sympy.Rational] = None) -> LieSystemDecomposition:
    """X = X3 + omega(t)^2 X1; ``c`` left symbolic when not given."""
    c = _parameter_c(c)
    cv = c.value if c.bound else c.symbol
    basis = (
        VectorField(0, -x),
        VectorField(-x / 2, y / 2),
        VectorField(y, cv / x**3),
    )
    algebra = LieAlgebraPresentation(basis=basis, parameters=(c,))
    return LieSystemDecomposition(algebra=algebra, coefficients=("omega(t)^2", "0", "1"))


def projective_schrodinger_system() -> LieSystemDecomposition:
    """X = b1(t) X1 + b2(t) X2 + (lambda2(t) - lambda1(t)) X3 on the stereographic plane."""
    basis = (
        VectorField(-2 * x * y, -(1 + y**2 - x**2)),
        VectorField(x**2 - y**2 + 1, 2 * x * y),
        VectorField(-y, x),
    )
    algebra = LieAlgebraPresentation(basis=basis)
    return LieSystemDecomposition(algebra=algebra, coefficients=("b1(t)", "b2(t)", "lambda2(t) - lambda1(t)"))


def _geometry(system: LieSystemDecomposition, with_curvature: bool) -> SystemGeometry:
    V = system.algebra
    c = liealg.structure_constants(V)
    kappa = liealg.killing_form(c)
    semisimple = liealg.is_semisimple(kappa)
    classification = liealg.classify_3d_semisimple(kappa) if semisimple and kappa.dimension == 3 else None
    result = nondegenerate_invariant(casimir_metric(V, c))
    if result is None:
        raise HypothesesNotMetError("no nondegenerate invariant Casimir metric for this system")
    hamiltonian = tuple(is_locally_hamiltonian(X, result.symplectic) for X in V)
    curvature = scalar_curvature(result.metric) if with_curvature else None
    logger.info(
        f"Lie system classified as {classification.value if classification else 'not 3d semisimple'}, "
        f"metric {result.metric.text()}"
    )
    return SystemGeometry(
        system=system,
        structure=c,
        killing=kappa,
        semisimple=semisimple,
        classification=classification,
        casimir=result,
        hamiltonian=hamiltonian,
        curvature=curvature,
    )


def milne_pinney_geometry(c: Union[None, Parameter, int, str, sympy.Rational] = None) -> SystemGeometry:
    return _geometry(milne_pinney_system(c), with_curvature=False)


def projective_schrodinger_geometry() -> SystemGeometry:
    return _geometry(projective_schrodinger_system(), with_curvature=True)


# ---------------------------------------------------------------------------
# errata
# ---------------------------------------------------------------------------

def _killing_item(label: str, X: VectorField, g: CovTensor2) -> ErratumItem:
    verdict = is_killing(X, g)
    residuals = ()
    if not verdict.holds:
        L = lie_derivative_cov(X, g)
        residuals = (f"L_{label} g = {L.text()}",)
    return ErratumItem(
        label=label, subject=f"Killing for {g.text()}", holds=verdict.holds, certainty=verdict.certainty.value,
        residuals=residuals,
    )


def su2_metric_erratum_report() -> ErratumReport:
    """Killing tests of the logarithmic metric printed for the so(3) realisation against the Casimir metric."""
    V = projective_schrodinger_system().algebra
    printed = CovTensor2(-2 * sympy.log(_R2), 0, -2 * sympy.log(_R2))
    casimir = CovTensor2(1 / _R2**2, 0, 1 / _R2**2)
    items = []
    for name, g in (("printed", printed), ("casimir", casimir)):
        for label, X in zip(V.labels, V):
            item = _killing_item(label, X, g)
            items.append(item.model_copy(update={"label": f"{name} {label}"}))
    logger.info("so(3) metric erratum report computed")
    return ErratumReport(
        key="su2-metric",
        description=(
            "Killing equations for the so(3) fields: the metric -2 log(1+x^2+y^2) gE "
            "against the Casimir metric gE/(1+x^2+y^2)^2"
        ),
        items=tuple(items),
    )


def _casimir_item(label: str, V: LieAlgebraPresentation, C: CasimirElement) -> ErratumItem:
    c = liealg.structure_constants(V)
    defects = liealg.ad_invariance_defect(C, c)
    invariant = all(d.is_zero_matrix for d in defects)
    residuals = tuple(
        f"ad_{V.labels[k]}: {[[to_text(a) for a in d.row(i)] for i in range(d.rows)]}"
        for k, d in enumerate(defects) if not d.is_zero_matrix
    )
    report = casimir_tensor_report(V, C, CasimirSource.GIVEN)
    tensor = "tensor field invariant" if all(ch.tensor.holds for ch in report.invariance) else "tensor field not invariant"
    return ErratumItem(
        label=label,
        subject=f"{C.text()} ad-invariant ({tensor})",
        holds=invariant,
        certainty="proved",
        residuals=residuals,
    )


def casimir_erratum_report(c: Optional[Union[Parameter, int, str, sympy.Rational]] = None) -> ErratumReport:
    """ad-invariance of v1 v3 + v3 v1 - 2 v1 v1 (as printed) and of v1 v3 + v3 v1 - 2 v2 v2 on the Milne-Pinney algebra."""
    V = milne_pinney_system(c).algebra
    printed = CasimirElement(matrix=[[-2, 0, 1], [0, 0, 0], [1, 0, 0]])
    corrected = CasimirElement(matrix=[[0, 0, 1], [0, -2, 0], [1, 0, 0]])
    return ErratumReport(
        key="milne-pinney-casimir",
        description="Casimir condition on the Milne-Pinney algebra for the printed and the corrected quadratic element",
        items=(_casimir_item("printed", V, printed), _casimir_item("corrected", V, corrected)),
    )


ERRATA = {
    "su2-metric": su2_metric_erratum_report,
    "milne-pinney-casimir": casimir_erratum_report,
}
