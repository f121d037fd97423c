# planelie/cli/commands/fields.py
import click

from planelie.cli.deps import get_contra, get_field, get_metric, get_parameters, parameter_options
from planelie.cli.output import emit, field_data, tensor_data, verdict_data
from planelie.schemas.report import CommandReport
from planelie.services import geom
from planelie.services.expr import canonical, to_text


# ---------- BRACKET ----------
@click.command("bracket")
@click.argument("first")
@click.argument("second")
@parameter_options
@click.pass_context
def bracket(ctx, first, second, params, symbols):
    """Lie bracket [X, Y] of two vector fields '<expr> dx + <expr> dy'."""
    parameters = get_parameters(params, symbols)
    X, Y = get_field(first, parameters), get_field(second, parameters)
    Z = geom.bracket(X, Y)
    emit(ctx, CommandReport(
        command="bracket",
        inputs={"X": X.text(), "Y": Y.text()},
        results={"bracket": field_data(Z), "wedge": to_text(geom.wedge_det(X, Y)), "commute": verdict_data(Z.is_zero())},
    ))


# ---------- LIE DERIVATIVE ----------
@click.command("lieder")
@click.argument("field")
@click.argument("tensor")
@click.option("--contra", is_flag=True, help="Read TENSOR as a contravariant tensor (same literal syntax).")
@parameter_options
@click.pass_context
def lieder(ctx, field, tensor, contra, params, symbols):
    """Lie derivative of a symmetric 2-tensor along a vector field."""
    parameters = get_parameters(params, symbols)
    X = get_field(field, parameters)
    if contra:
        T = get_contra(tensor, parameters)
        L = geom.lie_derivative_contra(X, T)
    else:
        T = get_metric(tensor, parameters)
        L = geom.lie_derivative_cov(X, T)
    emit(ctx, CommandReport(
        command="lieder",
        inputs={"X": X.text(), "tensor": T.text(), "variance": "contravariant" if contra else "covariant"},
        results={"lie_derivative": tensor_data(L), "zero": verdict_data(L.is_zero(), "zero", "nonzero")},
    ))


# ---------- CONFORMAL ----------
@click.command("conformal")
@click.argument("field")
@click.argument("metric")
@parameter_options
@click.pass_context
def conformal(ctx, field, metric, params, symbols):
    """Conformal factor f with L_X g = f g, if X is conformal for g (gE and gH are built in)."""
    parameters = get_parameters(params, symbols)
    X, g = get_field(field, parameters), get_metric(metric, parameters)
    factor, verdict = geom.conformal_check(X, g)
    emit(ctx, CommandReport(
        command="conformal",
        inputs={"X": X.text(), "g": g.text()},
        results={
            "conformal": verdict_data(verdict),
            "factor": to_text(factor) if factor is not None else None,
            "killing": verdict_data(geom.is_killing(X, g)),
        },
    ))


# ---------- KILLING ----------
@click.command("killing")
@click.argument("field")
@click.argument("metric")
@parameter_options
@click.pass_context
def killing(ctx, field, metric, params, symbols):
    """Whether X is a Killing field of g, with the residual L_X g."""
    parameters = get_parameters(params, symbols)
    X, g = get_field(field, parameters), get_metric(metric, parameters)
    emit(ctx, CommandReport(
        command="killing",
        inputs={"X": X.text(), "g": g.text()},
        results={"killing": verdict_data(geom.is_killing(X, g)), "lie_derivative": tensor_data(geom.lie_derivative_cov(X, g))},
    ))


# ---------- CURVATURE ----------
@click.command("curvature")
@click.argument("metric")
@parameter_options
@click.pass_context
def curvature(ctx, metric, params, symbols):
    """Scalar curvature R (= 2K) of a nondegenerate metric."""
    parameters = get_parameters(params, symbols)
    g = get_metric(metric, parameters)
    R = geom.scalar_curvature(g)
    emit(ctx, CommandReport(
        command="curvature",
        inputs={"g": g.text()},
        results={"scalar_curvature": to_text(R), "gaussian_curvature": to_text(canonical(R / 2))},
    ))


commands = [bracket, lieder, conformal, killing, curvature]
