import json

import pytest
import sympy

from planelie.core.config import configure
from planelie.core.errors import ConstraintViolationError, UnboundParameterError, UnknownEntryError, UsageError
from planelie.models.fields import G_E, G_H, VectorField
from planelie.schemas.catalog import CellStatus, Column
from planelie.services import catalog, distr, geom
from planelie.services.expr import x, y


def test_catalog_rows():
    ids = [e.id for e in catalog.list_entries()]
    assert len(ids) == 33
    assert ids[:3] == ["P1", "P2", "P3"]
    assert {"I8a1", "I14A", "I14B", "I15A", "I15B"} <= set(ids)
    assert catalog.entry("p2").id == "P2"
    with pytest.raises(UnknownEntryError):
        catalog.entry("Q9")


def test_default_grid():
    assert [p["alpha"] for p in catalog.default_grid("P1")] == [0, sympy.Rational(1, 2), 1, 2]
    assert catalog.default_grid("P2") == [{}]
    assert all(p["r"] >= 2 for p in catalog.default_grid("I14"))


def test_resolve_parameters():
    e = catalog.entry("I16")
    with pytest.raises(UsageError):
        catalog.resolve_parameters(e, {"beta": 1})
    with pytest.raises(UnboundParameterError):
        catalog.resolve_parameters(e, {"alpha": 1})
    with pytest.raises(ConstraintViolationError):
        catalog.resolve_parameters(e, {"alpha": 1, "r": "1/2"})
    with pytest.raises(ConstraintViolationError):
        catalog.resolve_parameters(catalog.entry("P1"), {"alpha": -1})


def test_instantiate_repeat_template():
    V = catalog.instantiate("I16", {"alpha": 1, "r": 2})
    assert V.dimension == 5
    assert V[3] == VectorField(0, x)
    assert V[4] == VectorField(0, x**2)


def test_instantiate_eta_families():
    poly = catalog.basis_templates(catalog.entry("I14"), {"r": sympy.Integer(2)})
    exp = catalog.basis_templates(catalog.entry("I14"), {"r": sympy.Integer(2)}, eta="exp")
    assert poly[1:] == ["(x^0) dy", "(x^1) dy"]
    assert exp[1:] == ["(x^0*exp(x)) dy", "(x^1*exp(x)) dy"]
    with pytest.raises(UsageError):
        catalog.instantiate("I14", {"r": 2}, eta="trig")


def test_verify_multiply_imprimitive_sl2():
    report = catalog.verify_entry("I4")
    assert report.status == CellStatus.PASS
    assert [c.column for c in report.cells] == list(Column)
    assert all(c.status == CellStatus.PASS for c in report.cells)
    assert not report.instance


def test_kill_flag_follows_the_parameter():
    flat = catalog.verify_entry("P1", {"alpha": 0})
    assert flat.cell(Column.KILL).expected == "+"
    assert flat.cell(Column.KILL).status == CellStatus.PASS
    spiral = catalog.verify_entry("P1", {"alpha": "1/2"})
    assert spiral.cell(Column.KILL).expected == "-"
    assert spiral.cell(Column.KILL).status == CellStatus.PASS
    assert spiral.instance
    assert spiral.label() == "P1[alpha=1/2]"


def test_killing_metric_from_the_centraliser_frame():
    report = catalog.verify_entry("I14A", {"c": 1})
    kill = report.cell(Column.KILL)
    assert kill.status == CellStatus.PASS
    assert any("coframe" in line for line in kill.evidence)


def test_kill_without_commuting_pair_is_theory_only():
    kill = catalog.verify_entry("I1").cell(Column.KILL)
    assert kill.status == CellStatus.THEORY_ONLY
    assert kill.notes


def test_dependent_commuting_pair_rules_out_killing_metrics():
    kill = catalog.verify_entry("I14", {"r": 2}).cell(Column.KILL)
    assert kill.status == CellStatus.PASS
    assert "function multiple" in kill.evidence[0]


def test_su2_row_carries_erratum():
    report = catalog.verify_entry("P3")
    assert report.status == CellStatus.PASS
    assert report.errata


def test_verify_rows_runs_the_grid():
    reports = catalog.verify_rows("P1")
    assert [r.params["alpha"] for r in reports] == ["0", "1/2", "1", "2"]
    with pytest.raises(UnboundParameterError):
        catalog.verify_entry("I14")


def test_parallel_verification_keeps_catalog_order():
    serial = catalog.verify_all(ids=["P2", "I4", "I1"])
    configure(verify_workers=3)
    parallel = catalog.verify_all(ids=["P2", "I4", "I1"])
    assert [e.id for e in parallel.entries] == ["P2", "I4", "I1"]
    assert parallel.model_dump() == serial.model_dump()
    assert parallel.ok


def test_wrong_expectation_fails(tmp_path):
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps({
        "version": 1,
        "entries": [{"id": "T", "cls": "primitive", "iso": "R^2", "basis": ["dx", "dy"], "kill": "-"}],
    }), encoding="utf-8")
    configure(catalog_path=path)
    table = catalog.verify_all()
    assert not table.ok
    assert table.entries[0].cell(Column.KILL).status == CellStatus.FAIL
    assert table.entries[0].cell(Column.DISTRIBUTIONS).status == CellStatus.FAIL
    assert table.entries[0].cell(Column.CONF).status == CellStatus.THEORY_ONLY


@pytest.mark.slow
def test_whole_catalog_verifies():
    table = catalog.verify_all()
    assert table.ok, [e.label() for e in table.entries if e.status == CellStatus.FAIL]
    assert table.counts()[CellStatus.PASS.value] > table.counts()[CellStatus.THEORY_ONLY.value]


@pytest.mark.parametrize("entry_id, params", [
    ("I6", {}), ("I7", {}), ("I8", {"alpha": "1/2"}), ("I8a1", {}),
    ("I9", {}), ("I10", {}), ("I11", {}), ("I14B", {}),
])
def test_imprimitive_rows_recover_their_distributions(entry_id, params):
    report = catalog.verify_entry(entry_id, params)
    cell = next(c for c in report.cells if c.column == Column.DISTRIBUTIONS)
    assert cell.status == CellStatus.PASS


@pytest.mark.parametrize("entry_id", ["P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8"])
def test_primitive_rows_have_no_invariant_distribution(entry_id):
    params = catalog.default_grid(entry_id)[0]
    V = catalog.instantiate(entry_id, params)
    assert distr.find_invariant_distributions(V) == []


def test_p2_domain_excludes_the_axis():
    report = catalog.verify_entry("P2")
    cell = next(c for c in report.cells if c.column == Column.DOMAIN)
    assert cell.status == CellStatus.PASS
    V = catalog.instantiate("P2")
    assert distr.generic_domain(V).singular_factors == (y,)


@pytest.mark.parametrize("entry_id, params, dimension", [
    ("P4", {}, 0),
    ("P1", {"alpha": 2}, 0),
    ("P1", {"alpha": 0}, 1),
    ("I8a1", {}, 0),
    ("I9", {}, 0),
    ("I14B", {}, 3),
])
def test_constant_frame_obstruction_dimension(entry_id, params, dimension):
    V = catalog.instantiate(entry_id, params)
    i, j = distr.commuting_pairs(V).independent[0]
    assert distr.killing_obstruction_constant_frame(V, i, j).dimension == dimension


@pytest.mark.parametrize("entry_id, expected", [
    ("P7", ["gE"]), ("I11", ["gH"]), ("I8a1", ["gE", "gH"]), ("P5", []),
])
def test_reference_conformal_classes(entry_id, expected):
    assert geom.conformal_class(catalog.instantiate(entry_id)) == expected


def test_i5_is_conformal_for_neither_reference():
    V = catalog.instantiate("I5")
    assert geom.conformal_class(V) == []
    # the scaling generator alone is conformal for gH
    assert geom.conformal_factor(V[1], G_E) is None
    assert geom.conformal_factor(V[1], G_H) == 3
    assert geom.conformal_factor(V[2], G_H) is None


def test_verify_all_uses_the_eta_family():
    table = catalog.verify_all(["I14"], {"I14": [{"r": 2}]}, eta="exp")
    assert len(table.entries) == 1
    assert any("exp(x)" in b for b in table.entries[0].basis)


@pytest.mark.parametrize("entry_id, name, g", [
    ("I6", "gH", G_H), ("I8a1", "gE", G_E), ("I8a1", "gH", G_H), ("I9", "gH", G_H),
    ("I10", "gH", G_H), ("I11", "gH", G_H), ("I14B", "gE", G_E),
])
def test_perpendicular_of_an_invariant_distribution_is_invariant(entry_id, name, g):
    V = catalog.instantiate(entry_id)
    assert name in geom.conformal_class(V)
    found = distr.find_invariant_distributions(V, [VectorField(1, 0), VectorField(1, 2)])
    assert found
    for D in found:
        assert distr.is_invariant(geom.perpendicular_generator(D.generator, g), V).holds
