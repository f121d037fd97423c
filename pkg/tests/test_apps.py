import pytest
import sympy

from planelie.core.errors import ConstraintViolationError
from planelie.models.algebra import IsoClass
from planelie.services import apps
from planelie.services.expr import canonical, x, y


def test_milne_pinney_geometry():
    geo = apps.milne_pinney_geometry()
    assert geo.semisimple
    assert geo.classification == IsoClass.SL2
    assert geo.curvature is None
    assert all(v.holds for v in geo.hamiltonian)
    c = geo.system.algebra.parameters[0].symbol
    assert canonical(geo.casimir.det - c) == 0
    omega = geo.casimir.symplectic.coefficient
    assert omega.subs(c, 4) == sympy.Rational(1, 2)
    assert omega.subs(c, -4) == sympy.Rational(1, 2)


def test_milne_pinney_system_text():
    system = apps.milne_pinney_system(1)
    assert system.text() == "omega(t)^2*X1 + 1*X3"
    with pytest.raises(ConstraintViolationError):
        apps.milne_pinney_system(0)


def test_schrodinger_geometry():
    geo = apps.projective_schrodinger_geometry()
    assert geo.classification == IsoClass.SO3
    assert geo.curvature == 8
    r2 = 1 + x**2 + y**2
    assert canonical(geo.casimir.metric.gxx - 1 / r2**2) == 0
    assert canonical(geo.casimir.symplectic.coefficient - 1 / r2**2) == 0


def test_printed_casimir_fails_and_corrected_one_holds():
    report = apps.casimir_erratum_report()
    printed, corrected = report.items
    assert not printed.holds and printed.residuals
    assert corrected.holds and not corrected.residuals
    assert report.lines()[0] == report.description


def test_logarithmic_metric_is_only_rotation_invariant():
    items = {item.label: item for item in apps.su2_metric_erratum_report().items}
    assert not items["printed X1"].holds
    assert not items["printed X2"].holds
    assert items["printed X3"].holds
    assert all(items[f"casimir X{k}"].holds for k in (1, 2, 3))


def test_errata_registry():
    assert set(apps.ERRATA) == {"su2-metric", "milne-pinney-casimir"}
    assert apps.ERRATA["milne-pinney-casimir"]().key == "milne-pinney-casimir"


def test_fixed_c_gives_rational_hamiltonian_form():
    geo = apps.milne_pinney_geometry(sympy.Rational(1, 4))
    assert geo.casimir.symplectic.coefficient == 2
