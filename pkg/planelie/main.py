# planelie/main.py
import logging

import click

from planelie import __version__
from planelie.cli.commands.algebra import commands as algebra_commands
from planelie.cli.commands.catalog import commands as catalog_commands
from planelie.cli.commands.examples import commands as example_commands
from planelie.cli.commands.fields import commands as field_commands
from planelie.cli.output import OutputOptions
from planelie.core.config import configure, get_settings
from planelie.core.errors import PlanelieError


class PlanelieGroup(click.Group):
    """Maps PlanelieError to its exit code with the detail on stderr."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except PlanelieError as exc:
            click.echo(f"error: {exc.detail}", err=True)
            ctx.exit(exc.exit_code)


@click.group(cls=PlanelieGroup)
@click.option("--json/--plain", "as_json", default=False, help="Report format (default: plain).")
@click.option("--precision", type=click.IntRange(20), default=None, help="Digits of high-precision evaluation.")
@click.option("--samples", type=click.IntRange(4), default=None, help="Sample points of sampled zero tests.")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr.")
@click.version_option(__version__, prog_name="planelie")
@click.pass_context
def cli(ctx, as_json, precision, samples, verbose):
    """Lie algebras of vector fields on the plane: Killing and conformal structure, Casimir metrics."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    previous = get_settings()
    configure(precision_digits=precision, zero_test_samples=samples)
    ctx.call_on_close(lambda: configure(**previous.model_dump()))
    ctx.obj = OutputOptions(as_json=as_json)


# Commands
for command in field_commands + algebra_commands + catalog_commands + example_commands:
    cli.add_command(command)
