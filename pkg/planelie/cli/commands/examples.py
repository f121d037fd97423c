# planelie/cli/commands/examples.py
import click

from planelie.cli.output import casimir_result_data, emit, erratum_data, field_data, killing_data, structure_data, verdict_data
from planelie.models.systems import SystemGeometry
from planelie.schemas.report import CommandReport
from planelie.services import apps
from planelie.services.expr import to_text

group = click.Group("example", help="Lie systems carried through the Casimir construction.")


def _geometry_results(geo: SystemGeometry) -> dict:
    V = geo.system.algebra
    return {
        "system": geo.system.text(),
        "basis": [field_data(X) for X in V],
        "structure": structure_data(geo.structure, V.labels),
        "killing_form": killing_data(geo.killing),
        "semisimple": geo.semisimple,
        "classification": geo.classification.value if geo.classification else None,
        "casimir": casimir_result_data(geo.casimir),
        "hamiltonian": {label: verdict_data(v) for label, v in zip(V.labels, geo.hamiltonian)},
    }


# ---------- MILNE-PINNEY ----------
@group.command("milne-pinney")
@click.option("--c", "c", default=None, metavar="VALUE", help="Nonzero rational c; symbolic when omitted.")
@click.pass_context
def milne_pinney(ctx, c):
    """x'' = -omega(t)^2 x + c/x^3 as a first order system on (x, y = x')."""
    geo = apps.milne_pinney_geometry(c)
    emit(ctx, CommandReport(
        command="example milne-pinney",
        inputs={"c": c if c is not None else "c"},
        results={**_geometry_results(geo), "erratum": erratum_data(apps.casimir_erratum_report(c))},
    ))


# ---------- SCHROEDINGER ----------
@group.command("schrodinger")
@click.pass_context
def schrodinger(ctx):
    """Two-level Schroedinger equation projected to the stereographic plane."""
    geo = apps.projective_schrodinger_geometry()
    emit(ctx, CommandReport(
        command="example schrodinger",
        results={
            **_geometry_results(geo),
            "scalar_curvature": to_text(geo.curvature),
            "erratum": erratum_data(apps.su2_metric_erratum_report()),
        },
    ))


commands = [group]
