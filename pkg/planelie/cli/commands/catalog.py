# planelie/cli/commands/catalog.py
import click

from planelie.cli.output import emit, field_data
from planelie.core.config import configure
from planelie.models.catalog import ParamKind, RepeatTemplate
from planelie.schemas.catalog import TableReport
from planelie.schemas.report import CommandReport
from planelie.services import catalog as catalog_service
from planelie.services.parser import parse_parameter_bindings

group = click.Group("catalog", help="Browse and verify the classification table.")


def _basis_text(item) -> str:
    if isinstance(item, RepeatTemplate):
        return f"{item.field} for {item.index} = {item.start}..{item.stop}"
    return item


# ---------- LIST ----------
@group.command("list")
@click.pass_context
def list_rows(ctx):
    """Row ids with their class, algebra and flags."""
    rows = [
        {
            "id": e.id,
            "class": e.cls.value,
            "algebra": e.iso,
            "parameters": [p.describe() for p in e.parameters],
            "kill": e.kill.value,
            "conf": e.conf,
        }
        for e in catalog_service.list_entries()
    ]
    emit(ctx, CommandReport(command="catalog list", results={"version": catalog_service.load_catalog().version, "rows": rows}))


# ---------- SHOW ----------
@group.command("show")
@click.argument("entry_id", metavar="ID")
@click.option("--param", "params", multiple=True, metavar="NAME=VALUE", help="Instantiate with these values.")
@click.option("--eta", type=click.Choice(catalog_service.ETA_FAMILIES), default="poly", show_default=True)
@click.pass_context
def show(ctx, entry_id, params, eta):
    """A row as stored, and its basis instantiated when every index parameter is bound."""
    e = catalog_service.entry(entry_id)
    bindings = parse_parameter_bindings(params)
    results = {
        "row": e.model_dump(mode="json", by_alias=True, exclude_none=True),
        "template": [_basis_text(b) for b in e.basis],
        "grid": [{k: str(v) for k, v in point.items()} for point in catalog_service.default_grid(e.id)],
    }
    if bindings or not any(p.kind == ParamKind.INDEX for p in e.parameters):
        V = catalog_service.instantiate(e.id, bindings, eta)
        results["basis"] = [field_data(X) for X in V]
    emit(ctx, CommandReport(command="catalog show", inputs={"id": e.id, "params": bindings}, results=results))


# ---------- VERIFY ----------
@group.command("verify")
@click.argument("entry_id", metavar="ID|all")
@click.option("--param", "params", multiple=True, metavar="NAME=VALUE",
              help="Verify this instantiation only (default: the row's parameter grid).")
@click.option("--eta", type=click.Choice(catalog_service.ETA_FAMILIES), default="poly", show_default=True)
@click.option("--workers", type=click.IntRange(1), default=None, help="Rows verified in parallel.")
@click.pass_context
def verify(ctx, entry_id, params, eta, workers):
    """Recompute the machine-checkable columns of one row, or of all rows; exit 1 on any mismatch."""
    if workers is not None:
        configure(verify_workers=workers)
    bindings = parse_parameter_bindings(params)
    if entry_id.lower() == "all":
        if bindings:
            raise click.UsageError("--param applies to a single row")
        table = catalog_service.verify_all(eta=eta)
    else:
        table = TableReport(entries=catalog_service.verify_rows(entry_id, bindings, eta))
    emit(ctx, table)
    if not table.ok:
        ctx.exit(1)


# ---------- GRID ----------
@group.command("grid")
@click.argument("entry_id", metavar="ID")
@click.pass_context
def grid(ctx, entry_id):
    """The parameter values a row is verified on by default."""
    e = catalog_service.entry(entry_id)
    points = [{k: str(v) for k, v in point.items()} for point in catalog_service.default_grid(e.id)]
    emit(ctx, CommandReport(
        command="catalog grid",
        inputs={"id": e.id},
        results={"parameters": [p.describe() for p in e.parameters], "points": points},
    ))


commands = [group]
