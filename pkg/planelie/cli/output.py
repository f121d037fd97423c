# planelie/cli/output.py
"""
Report rendering. JSON output is indented with insertion-ordered keys, so
identical invocations print identical bytes; the plain form is an indented
key/value listing of the same data.
"""
import json
from typing import Any, Optional, Union

import click
from pydantic import BaseModel

from planelie.models.algebra import CasimirElement, KillingFormMatrix, StructureConstants
from planelie.models.casimir import CasimirMetricResult
from planelie.models.distributions import DomainReport, ObstructionResult, Rank1Distribution
from planelie.models.fields import ContraTensor2, CovTensor2, TwoForm, VectorField
from planelie.models.systems import ErratumReport
from planelie.models.verdict import Verdict
from planelie.schemas.catalog import CellStatus, TableReport
from planelie.schemas.report import CommandReport
from planelie.services.expr import to_text


class OutputOptions(BaseModel):
    as_json: bool = False


# ---------- converters to JSON-safe data ----------

def field_data(X: VectorField) -> dict:
    return {"text": X.text(), "x": to_text(X.components[0]), "y": to_text(X.components[1])}


def tensor_data(t: Union[CovTensor2, ContraTensor2]) -> dict:
    keys = ("xx", "xy", "yy")
    return {"text": t.text(), **{k: to_text(c) for k, c in zip(keys, t.components)}}


def form_data(w: Optional[TwoForm]) -> Optional[str]:
    return w.text() if w is not None else None


def matrix_rows(rows) -> list[list[str]]:
    return [[to_text(a) for a in row] for row in rows]


def verdict_data(v: Verdict, yes: str = "true", no: str = "false") -> str:
    return v.tag(yes, no)


def structure_data(c: StructureConstants, labels) -> dict:
    return {"dimension": c.dimension, "brackets": c.relations(labels), "abelian": c.is_abelian()}


def killing_data(kappa: KillingFormMatrix) -> dict:
    return {"matrix": kappa.rows(), "det": to_text(kappa.det())}


def casimir_data(C: CasimirElement) -> dict:
    return {"text": C.text(), "matrix": matrix_rows(C.matrix.tolist())}


def casimir_result_data(r: CasimirMetricResult) -> dict:
    return {
        "casimir": casimir_data(r.casimir),
        "source": r.source.value,
        "tensor": tensor_data(r.tensor),
        "det": to_text(r.det),
        "det_verdict": verdict_data(r.det_verdict, "nonzero", "zero"),
        "metric": tensor_data(r.metric) if r.metric is not None else None,
        "symplectic": form_data(r.symplectic),
        "invariance": [
            {
                "field": ch.label,
                "tensor": verdict_data(ch.tensor, "invariant", "not-invariant"),
                "metric": verdict_data(ch.metric, "killing", "not-killing") if ch.metric is not None else None,
            }
            for ch in r.invariance
        ],
        "warnings": list(r.warnings),
    }


def distribution_data(D: Rank1Distribution, labels) -> dict:
    return {
        "generator": D.text(),
        "provenance": D.provenance.value,
        "pair": [labels[i] for i in D.pair] if D.pair else None,
        "full_line": D.full_line,
    }


def domain_data(report: DomainReport) -> dict:
    return {
        "rank": report.rank,
        "domain": report.description,
        "singular_factors": [to_text(f) for f in report.singular_factors],
        "pole_factors": [to_text(f) for f in report.pole_factors],
        "minors": [to_text(m) for m in report.minors],
        "exact": report.exact,
    }


def obstruction_data(ob: ObstructionResult, labels) -> dict:
    return {
        "frame": [Y.text() for Y in ob.frame],
        "pair": [labels[i] for i in ob.pair] if ob.pair else None,
        "commuting": ob.commuting,
        "dimension": ob.dimension,
        "solutions": [[to_text(a) for a in v] for v in ob.constants],
        "metrics": [g.text() for g in ob.metrics],
        "admits_nondegenerate": ob.admits_nondegenerate,
        "witnesses": [
            {"metric": g.text(), "signature": "definite" if d else "indefinite"}
            for g, d in zip(ob.witnesses, ob.definite)
        ],
    }


def erratum_data(report: ErratumReport) -> dict:
    return {
        "key": report.key,
        "description": report.description,
        "items": [item.model_dump(mode="json") for item in report.items],
    }


# ---------- rendering ----------

def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _plain(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _plain(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v) if not isinstance(v, (dict, list)) else '-'}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)) and item:
                sub = _plain(item, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines += sub[1:]
            else:
                lines.append(f"{pad}- {_scalar(item)}")
        return lines
    return [f"{pad}{_scalar(value)}"]


def _table_lines(table: TableReport) -> list[str]:
    lines = []
    for e in table.entries:
        lines.append(f"{e.label()}: {e.status.value}")
        if e.error:
            lines.append(f"  error: {e.error}")
        for c in e.cells:
            lines.append(f"  {c.column.value:<13} {c.status.value:<11} expected {c.expected}; found {c.found}")
            if c.status != CellStatus.PASS:
                lines += [f"      {ev}" for ev in c.evidence]
            lines += [f"      note: {n}" for n in c.notes]
        lines += [f"  erratum: {line}" for line in e.errata]
    counts = table.counts()
    lines.append(", ".join(f"{k} {v}" for k, v in counts.items()))
    return lines


def emit(ctx: click.Context, report: Union[CommandReport, TableReport]) -> None:
    options: OutputOptions = ctx.find_object(OutputOptions) or OutputOptions()
    if options.as_json:
        payload = report.model_dump(mode="json", by_alias=True)
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
        return
    if isinstance(report, TableReport):
        lines = _table_lines(report)
    else:
        lines = [report.command] + _plain({"inputs": report.inputs, "results": report.results})
        lines += [f"note: {n}" for n in report.notes]
    click.echo("\n".join(lines))
