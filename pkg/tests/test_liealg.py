import pytest
import sympy

from planelie.core.errors import (
    DegenerateTensorError,
    DependentBasisError,
    DimensionMismatchError,
    HypothesesNotMetError,
    InconsistentInputError,
    NonConstantCoefficientsError,
)
from planelie.models.algebra import CasimirElement, IsoClass, LieAlgebraPresentation, StructureConstants
from planelie.models.fields import VectorField
from planelie.models.parameter import Parameter
from planelie.services import liealg
from planelie.services.expr import x, y

SL2_CASIMIR = [[0, 0, 1], [0, -2, 0], [1, 0, 0]]


def test_milne_pinney_structure(milne_pinney):
    c = liealg.structure_constants(milne_pinney)
    assert c.relations(milne_pinney.labels) == ["[X1, X2] = X1", "[X1, X3] = (2)*X2", "[X2, X3] = X3"]
    assert not c.is_abelian()
    kappa = liealg.killing_form(c)
    assert kappa.matrix == sympy.Matrix([[0, 0, -4], [0, 2, 0], [-4, 0, 0]])
    assert liealg.is_semisimple(kappa)
    assert liealg.classify_3d_semisimple(kappa) == IsoClass.SL2


def test_schrodinger_structure(schrodinger):
    kappa = liealg.killing_form(liealg.structure_constants(schrodinger))
    assert kappa.matrix == sympy.diag(-8, -8, -2)
    assert liealg.classify_3d_semisimple(kappa) == IsoClass.SO3


def test_generic_rank(translations):
    assert liealg.generic_rank(translations) == 2
    assert liealg.generic_rank(LieAlgebraPresentation(basis=(VectorField(1, 0), VectorField(x, 0)))) == 1


def test_bracket_with_function_coefficients_is_rejected():
    V = LieAlgebraPresentation(basis=(VectorField(1, 0), VectorField(0, x**2)))
    with pytest.raises(NonConstantCoefficientsError) as info:
        liealg.structure_constants(V)
    assert info.value.pair == (1, 2)
    assert info.value.exit_code == 3


def test_dependent_basis_is_rejected():
    with pytest.raises(DependentBasisError):
        LieAlgebraPresentation(basis=(VectorField(1, x), VectorField(2, 2 * x)))


def test_structure_constants_must_be_antisymmetric():
    with pytest.raises(InconsistentInputError):
        StructureConstants(c=[[[0, 0], [1, 0]], [[1, 0], [0, 0]]])


def test_casimirs_of_sl2(milne_pinney):
    c = liealg.structure_constants(milne_pinney)
    casimirs = liealg.quadratic_casimirs(c)
    assert len(casimirs) == 1
    assert casimirs[0].matrix == sympy.Matrix(SL2_CASIMIR)
    assert liealg.is_ad_invariant(casimirs[0], c)
    inverse = liealg.inverse_killing_casimir(liealg.killing_form(c))
    assert liealg.proportional(inverse, casimirs[0])


def test_printed_casimir_is_not_ad_invariant(milne_pinney):
    c = liealg.structure_constants(milne_pinney)
    printed = CasimirElement(matrix=[[-2, 0, 1], [0, 0, 0], [1, 0, 0]])
    assert not liealg.is_ad_invariant(printed, c)
    assert any(not d.is_zero_matrix for d in liealg.ad_invariance_defect(printed, c))


def test_casimirs_of_so3_and_euclidean(schrodinger, p1_rotation):
    so3 = liealg.quadratic_casimirs(liealg.structure_constants(schrodinger))
    assert [C.matrix for C in so3] == [sympy.diag(1, 1, 4)]
    e2 = liealg.quadratic_casimirs(liealg.structure_constants(p1_rotation))
    assert [C.matrix for C in e2] == [sympy.diag(1, 1, 0)]


def test_abelian_algebra_has_every_symmetric_matrix_as_casimir(translations):
    c = liealg.structure_constants(translations)
    assert c.is_abelian()
    assert len(liealg.quadratic_casimirs(c)) == 3


def test_inertia():
    assert liealg.inertia(sympy.diag(1, -1, 0)) == (1, 1, 1)
    assert liealg.inertia(sympy.Matrix([[0, 1], [1, 0]])) == (1, 1, 0)
    assert liealg.inertia(sympy.Matrix([[0, 0, -4], [0, 2, 0], [-4, 0, 0]])) == (2, 1, 0)
    with pytest.raises(HypothesesNotMetError):
        liealg.inertia(sympy.Matrix([[sympy.Symbol("a"), 0], [0, 1]]))


def test_classify_errors(translations, p1_rotation):
    with pytest.raises(DimensionMismatchError):
        liealg.classify_3d_semisimple(liealg.killing_form(liealg.structure_constants(translations)))
    with pytest.raises(DegenerateTensorError):
        liealg.classify_3d_semisimple(liealg.killing_form(liealg.structure_constants(p1_rotation)))


def test_change_basis(milne_pinney):
    c = liealg.structure_constants(milne_pinney)
    swapped = liealg.change_basis(c, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    assert swapped.bracket_coefficients(0, 1) == (-1, 0, 0)
    assert swapped.bracket_coefficients(0, 2) == (0, -2, 0)
    kappa = liealg.killing_form(swapped)
    assert liealg.classify_3d_semisimple(kappa) == IsoClass.SL2
    with pytest.raises(DependentBasisError):
        liealg.change_basis(c, [[1, 0, 0], [1, 0, 0], [0, 0, 1]])
    with pytest.raises(DimensionMismatchError):
        liealg.change_basis(c, [[1, 0], [0, 1]])


def test_casimirs_grow_at_an_exceptional_parameter(milne_pinney):
    param = Parameter(name="a")
    a = param.symbol
    # rotation plus a scaling of weight a; the scaling kills every Casimir unless a = 0
    V = LieAlgebraPresentation(
        basis=(VectorField(1, 0), VectorField(0, 1), VectorField(a * x + y, a * y - x)),
        parameters=(param,),
    )
    c = liealg.structure_constants(V)
    assert liealg.quadratic_casimirs(c) == []
    assert liealg.casimir_exceptional_values(c) == [(a, 0, 1)]
    assert liealg.casimir_exceptional_values(liealg.structure_constants(milne_pinney)) == []
