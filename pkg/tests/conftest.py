import pytest
import sympy
from click.testing import CliRunner

from planelie.core.config import configure, get_settings
from planelie.models.algebra import LieAlgebraPresentation
from planelie.models.fields import VectorField
from planelie.services import apps
from planelie.services.expr import x, y


@pytest.fixture(autouse=True)
def restore_settings():
    previous = get_settings()
    yield
    configure(**previous.model_dump())


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def c_symbol():
    return sympy.Symbol("c", real=True, nonzero=True)


@pytest.fixture
def milne_pinney():
    """Milne-Pinney algebra with c left symbolic."""
    return apps.milne_pinney_system().algebra


@pytest.fixture
def schrodinger():
    return apps.projective_schrodinger_system().algebra


@pytest.fixture
def translations():
    return LieAlgebraPresentation(basis=(VectorField(1, 0), VectorField(0, 1)))


@pytest.fixture
def p1_rotation():
    """dx, dy and the rotation y dx - x dy: Killing for gE."""
    return LieAlgebraPresentation(basis=(VectorField(1, 0), VectorField(0, 1), VectorField(y, -x)))


@pytest.fixture
def algebra_file(tmp_path):
    def write(text: str):
        path = tmp_path / "algebra.txt"
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
