import pytest
import sympy

from planelie.core.errors import DimensionMismatchError
from planelie.models.algebra import CasimirElement, LieAlgebraPresentation
from planelie.models import casimir as casimir_models
from planelie.models import systems as systems_models
from planelie.models.casimir import CasimirSource
from planelie.models.fields import G_E, CovTensor2, VectorField
from planelie.services import apps, geom, liealg
from planelie.services.casimir import casimir_metric, casimir_tensor_report, nondegenerate_invariant, upsilon
from planelie.services.expr import canonical, x, y

SL2_CASIMIR = CasimirElement(matrix=[[0, 0, 1], [0, -2, 0], [1, 0, 0]])


def test_milne_pinney_casimir_tensor(milne_pinney):
    c = milne_pinney.parameters[0].symbol
    G = upsilon(SL2_CASIMIR, milne_pinney)
    assert canonical(G.Gxx + x**2 / 2) == 0
    assert canonical(G.Gxy + x * y / 2) == 0
    assert canonical(G.Gyy + 2 * c / x**2 + y**2 / 2) == 0
    assert canonical(G.det() - c) == 0


def test_milne_pinney_metric_is_invariant(milne_pinney):
    result = nondegenerate_invariant(casimir_metric(milne_pinney))
    assert result is not None
    assert result.source == CasimirSource.SOLVED
    assert result.all_invariant and result.all_proved
    assert result.det_verdict.holds
    c = milne_pinney.parameters[0].symbol
    g = result.metric
    assert canonical(g.gxx + 2 / x**2 + y**2 / (2 * c)) == 0
    assert canonical(g.gxy - x * y / (2 * c)) == 0
    assert canonical(g.gyy + x**2 / (2 * c)) == 0


def test_milne_pinney_metric_for_unit_c():
    g = apps.milne_pinney_geometry(1).casimir.metric
    assert canonical(g.gxx - (-x**2 * y**2 - 4) / (2 * x**2)) == 0
    assert canonical(g.gxy - x * y / 2) == 0
    assert canonical(g.gyy + x**2 / 2) == 0


def test_milne_pinney_symplectic_form_for_fixed_c():
    geo = apps.milne_pinney_geometry(2)
    assert canonical(geo.casimir.symplectic.coefficient - sympy.sqrt(2) / 2) == 0
    assert all(v.holds for v in geo.hamiltonian)


def test_schrodinger_metric(schrodinger):
    result = nondegenerate_invariant(casimir_metric(schrodinger))
    r2 = 1 + x**2 + y**2
    assert canonical(result.tensor.Gxx - r2**2) == 0
    assert result.tensor.Gxy == 0
    ratio = geom.conformal_ratio(result.metric, G_E)
    assert canonical(ratio.ratio - 1 / r2**2) == 0
    assert geom.scalar_curvature(result.metric) == 8


def test_schrodinger_inverse_killing_form_is_not_repeated(schrodinger):
    results = casimir_metric(schrodinger)
    assert [r.source for r in results] == [CasimirSource.SOLVED]


def test_euclidean_algebra_gives_the_flat_metric(p1_rotation):
    result = nondegenerate_invariant(casimir_metric(p1_rotation))
    assert result.metric == G_E
    assert geom.scalar_curvature(result.metric) == 0


def test_p2_metric_is_a_negative_multiple_of_the_hyperbolic_one():
    V = LieAlgebraPresentation(basis=(
        VectorField(1, 0),
        VectorField(x, y),
        VectorField(x**2 - y**2, 2 * x * y),
    ))
    result = nondegenerate_invariant(casimir_metric(V))
    ratio = geom.conformal_ratio(result.metric, CovTensor2(1 / y**2, 0, 1 / y**2))
    assert ratio.ratio == sympy.Rational(-1, 2)


def test_degenerate_casimir_tensor(translations):
    report = casimir_tensor_report(translations, CasimirElement(matrix=[[1, 0], [0, 0]]))
    assert report.degenerate
    assert not report.det_verdict.holds
    assert report.symplectic is None
    assert all(ch.tensor.holds and ch.metric is None for ch in report.invariance)


def test_upsilon_dimension_mismatch(translations):
    with pytest.raises(DimensionMismatchError):
        upsilon(SL2_CASIMIR, translations)


def test_abelian_candidates_include_nondegenerate_metric(translations):
    results = casimir_metric(translations, liealg.structure_constants(translations))
    assert len(results) == 3
    assert nondegenerate_invariant(results) is not None


@pytest.mark.parametrize("module", [casimir_models, systems_models])
def test_result_model_modules_are_documented(module):
    assert module.__doc__ and module.__doc__.strip()
