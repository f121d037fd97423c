import pytest
import sympy

from planelie.core.errors import DegenerateTensorError, HypothesesNotMetError
from planelie.models.fields import G_E, G_H, ContraTensor2, CovTensor2, Sign, TwoForm, VectorField
from planelie.services import catalog, geom
from planelie.services.casimir import casimir_metric, nondegenerate_invariant
from planelie.services.expr import canonical, is_zero, x, y
from tests.oracles import brioschi_gaussian_curvature, conformal_gauss_curvature

R2 = 1 + x**2 + y**2
ROTATION = VectorField(y, -x)
DILATION = VectorField(x, y)


def test_bracket_of_quadratic_and_translation():
    X = VectorField(x**2, y**2)
    Y = VectorField(1, 1)
    assert geom.bracket(X, Y) == VectorField(-2 * x, -2 * y)
    assert geom.bracket(Y, X) == VectorField(2 * x, 2 * y)


def test_wedge_det():
    assert geom.wedge_det(VectorField(1, 0), VectorField(0, 1)) == 1
    assert geom.wedge_det(VectorField(1, 1), VectorField(x**2, y**2)) == y**2 - x**2


def test_rotation_is_a_euclidean_isometry():
    assert geom.lie_derivative_cov(ROTATION, G_E).is_zero().holds
    assert geom.is_killing(ROTATION, G_E).holds
    assert geom.lie_derivative_contra(ROTATION, ContraTensor2(1, 0, 1)).is_zero().holds


def test_conformal_factors():
    assert geom.conformal_factor(DILATION, G_E) == 2
    assert geom.conformal_factor(DILATION, G_H) == 2
    assert geom.conformal_factor(VectorField(x**2 - y**2, 2 * x * y), G_E) == 4 * x
    assert geom.conformal_factor(VectorField(x, 0), G_E) is None


def test_killing_field_has_zero_factor():
    factor, verdict = geom.conformal_check(ROTATION, G_E)
    assert verdict.holds
    assert factor == 0


def test_conformal_check_rejects_degenerate_metrics():
    with pytest.raises(DegenerateTensorError):
        geom.conformal_check(DILATION, CovTensor2(1, 0, 0))


def test_invert_round_trip():
    g = CovTensor2(1 / R2**2, 0, 1 / R2**2)
    G = geom.invert(g)
    assert isinstance(G, ContraTensor2)
    assert canonical(G.Gxx - R2**2) == 0 and G.Gxy == 0
    assert all(canonical(a - b) == 0 for a, b in zip(geom.invert(G).components, g.components))
    with pytest.raises(DegenerateTensorError):
        geom.invert(CovTensor2(x, x, x))


def test_hodge_unit():
    assert geom.hodge_unit(G_E) == TwoForm(1)
    omega = geom.hodge_unit(CovTensor2(1 / R2**2, 0, 1 / R2**2))
    assert canonical(omega.coefficient - 1 / R2**2) == 0


def test_scalar_curvature_of_model_spaces():
    assert geom.scalar_curvature(G_E) == 0
    assert geom.scalar_curvature(CovTensor2(4 / R2**2, 0, 4 / R2**2)) == 2
    assert geom.scalar_curvature(CovTensor2(1 / y**2, 0, 1 / y**2)) == -2
    assert geom.scalar_curvature(CovTensor2(1 / R2**2, 0, 1 / R2**2)) == 8


def test_scalar_curvature_matches_brioschi():
    for g in [
        CovTensor2(1 + x**2, x * y, 2 + y**2),
        CovTensor2(0, 1 / (x - y) ** 2, 0),
        CovTensor2(y**2, 0, 1 + x**2),
    ]:
        assert canonical(geom.scalar_curvature(g) - 2 * brioschi_gaussian_curvature(g)) == 0


def test_scalar_curvature_matches_conformal_gauss_formula():
    phi = sympy.log(1 + x**2) / 2
    g = CovTensor2(sympy.exp(2 * phi), 0, sympy.exp(2 * phi))
    assert is_zero(geom.scalar_curvature(g) - 2 * conformal_gauss_curvature(phi)).holds


def test_pairing_and_perpendicular_generator():
    Y = VectorField(1, 1)
    P = geom.perpendicular_generator(Y, G_E)
    assert geom.pairing(G_E, Y, P) == 0
    assert geom.wedge_det(P, VectorField(1, -1)) == 0
    with pytest.raises(HypothesesNotMetError):
        geom.perpendicular_generator(VectorField(0, 0), G_E)


def test_locally_hamiltonian():
    area = TwoForm(1)
    assert geom.is_locally_hamiltonian(ROTATION, area).holds
    assert not geom.is_locally_hamiltonian(DILATION, area).holds
    with pytest.raises(HypothesesNotMetError):
        geom.is_locally_hamiltonian(ROTATION, TwoForm(0))


def test_conformal_ratio():
    r = geom.conformal_ratio(G_E.scaled(R2), G_E)
    assert canonical(r.ratio - R2) == 0
    assert r.sign == Sign.POSITIVE
    assert geom.conformal_ratio(G_E.scaled(-2), G_E).sign == Sign.NEGATIVE
    assert geom.conformal_ratio(G_E, G_H) is None


def test_commute_or_orthogonal():
    assert geom.commute_or_orthogonal(G_E, VectorField(1, 0), VectorField(0, 1)).holds
    assert geom.commute_or_orthogonal(G_E, VectorField(1, 0), VectorField(0, x)).holds
    assert not geom.commute_or_orthogonal(G_E, VectorField(1, 0), VectorField(x, 0)).holds


def test_conformal_class(p1_rotation, translations):
    assert geom.conformal_class(p1_rotation) == ["gE"]
    assert geom.conformal_class(translations) == ["gE", "gH"]


def test_is_definite():
    assert geom.is_definite(G_E)
    assert not geom.is_definite(G_H)


def test_curvature_of_the_i4_casimir_metric():
    g = nondegenerate_invariant(casimir_metric(catalog.instantiate("I4"))).metric
    R = geom.scalar_curvature(g)
    assert not R.has(x, y)
    assert R != 0
    assert canonical(R - 2 * brioschi_gaussian_curvature(g)) == 0
