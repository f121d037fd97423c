# planelie/cli/commands/algebra.py
"""Commands over a whole Lie algebra of vector fields, read from an algebra file or a catalog row."""
import click

from planelie.cli.deps import algebra_source, get_field
from planelie.cli.output import (
    casimir_result_data,
    distribution_data,
    domain_data,
    emit,
    killing_data,
    obstruction_data,
    structure_data,
    verdict_data,
)
from planelie.core.errors import UsageError
from planelie.models.algebra import LieAlgebraPresentation
from planelie.schemas.report import CommandReport
from planelie.services import distr, geom, liealg
from planelie.services.casimir import casimir_metric, nondegenerate_invariant
from planelie.services.expr import to_text


def _label_index(V: LieAlgebraPresentation, label: str) -> int:
    try:
        return V.labels.index(label.strip())
    except ValueError:
        raise UsageError(f"no basis element labelled {label!r} (have {', '.join(V.labels)})")


# ---------- CASIMIR METRIC ----------
@click.command("casimir-metric")
@algebra_source
@click.pass_context
def casimir_metric_cmd(ctx, algebra, inputs):
    """Casimir tensor fields of the algebra and the metrics they induce."""
    V = algebra
    c = liealg.structure_constants(V)
    kappa = liealg.killing_form(c)
    semisimple = liealg.is_semisimple(kappa)
    results = casimir_metric(V, c)
    chosen = nondegenerate_invariant(results)
    out = {
        "structure": structure_data(c, V.labels),
        "killing_form": killing_data(kappa),
        "semisimple": semisimple,
        "classification": (
            liealg.classify_3d_semisimple(kappa).value if semisimple and kappa.dimension == 3 else None
        ),
        "casimirs": [casimir_result_data(r) for r in results],
        "metric": chosen.metric.text() if chosen is not None else None,
    }
    if chosen is not None:
        out["hamiltonian"] = {
            label: verdict_data(geom.is_locally_hamiltonian(X, chosen.symplectic))
            for label, X in zip(V.labels, V)
        }
    notes = [] if chosen is not None else ["no nondegenerate invariant Casimir tensor field"]
    emit(ctx, CommandReport(command="casimir-metric", inputs=inputs, results=out, notes=notes))


# ---------- INVARIANT DISTRIBUTIONS ----------
@click.command("invariant-dist")
@algebra_source
@click.option("--candidate", "candidates", multiple=True, metavar="FIELD",
              help="Extra generator to test, '<expr> dx + <expr> dy'.")
@click.pass_context
def invariant_dist(ctx, algebra, inputs, candidates):
    """Rank-one distributions left invariant by the algebra."""
    V = algebra
    extra = [get_field(t, V.parameters) for t in candidates]
    found = distr.find_invariant_distributions(V, extra)
    pairs = distr.commuting_pairs(V)
    pencils = [distr.constant_combination_invariants(V, i, j) for i, j in pairs.independent]
    emit(ctx, CommandReport(
        command="invariant-dist",
        inputs={**inputs, "candidates": [Y.text() for Y in extra]},
        results={
            "distributions": [distribution_data(D, V.labels) for D in found],
            "pencils": [
                {"pair": [V.labels[k] for k in p.pair], "points": p.texts()} for p in pencils
            ],
            "forced_generators": [V.labels[i] for i in distr.forced_generators(V)],
        },
    ))


# ---------- GENERIC DOMAIN ----------
@click.command("domain")
@algebra_source
@click.pass_context
def domain(ctx, algebra, inputs):
    """Generic rank of the algebra and the locus where it drops."""
    V = algebra
    report = distr.generic_domain(V)
    mismatches = distr.domain_spot_check(V, report)
    notes = [f"rank {r} at ({to_text(p[0])}, {to_text(p[1])}) inside the domain" for p, r in mismatches]
    emit(ctx, CommandReport(command="domain", inputs=inputs, results=domain_data(report), notes=notes))


# ---------- KILLING OBSTRUCTION ----------
@click.command("obstruction")
@algebra_source
@click.option("--pair", "pair", metavar="Xi,Xj", help="Commuting basis pair whose coframe is used.")
@click.option("--frame", "frame", nargs=2, metavar="Y1 Y2", help="Explicit independent frame of vector fields.")
@click.pass_context
def obstruction(ctx, algebra, inputs, pair, frame):
    """Metrics with constant coefficients in a coframe for which the whole algebra is Killing."""
    V = algebra
    if pair and frame:
        raise UsageError("give --pair or --frame, not both")
    if frame:
        Y1, Y2 = (get_field(t, V.parameters) for t in frame)
        results = [distr.killing_obstruction_in_frame(V, Y1, Y2)]
    elif pair:
        i, j = (_label_index(V, p) for p in pair.split(","))
        results = [distr.killing_obstruction_constant_frame(V, i, j)]
    else:
        results = [distr.killing_obstruction_constant_frame(V, i, j) for i, j in distr.commuting_pairs(V).independent]
    triple = distr.killing_triple_obstruction(V)
    notes = [] if results else ["no commuting independent pair in the basis"]
    emit(ctx, CommandReport(
        command="obstruction",
        inputs=inputs,
        results={
            "frames": [obstruction_data(ob, V.labels) for ob in results],
            "triple": [V.labels[k] for k in triple] if triple is not None else None,
        },
        notes=notes,
    ))


commands = [casimir_metric_cmd, invariant_dist, domain, obstruction]
