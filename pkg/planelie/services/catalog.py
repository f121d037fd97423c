# planelie/services/catalog.py
"""
The classification table as executable data.

Every row is instantiated on a finite parameter grid and its machine-checkable
columns are recomputed: closure (with the Cartan criterion and, for the 3d
semisimple rows, sl(2)/so(3)), the generic domain, the invariant distributions,
the Kill flag and the Conf flag. Claims that a coordinate computation cannot
settle are reported as THEORY-ONLY, never as PASS.
"""
import itertools
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional

import sympy

from planelie.core.config import get_settings
from planelie.core.errors import (
    PlanelieError,
    UnboundParameterError,
    UnknownEntryError,
    UsageError,
)
from planelie.models.algebra import LieAlgebraPresentation, StructureConstants
from planelie.models.catalog import Catalog, CatalogEntry, KillFlag, ParamKind, RepeatTemplate
from planelie.models.distributions import DomainReport
from planelie.models.fields import REFERENCE_METRICS, CovTensor2, VectorField
from planelie.models.parameter import Parameter
from planelie.models.verdict import Verdict
from planelie.schemas.catalog import CellReport, CellStatus, Column, EntryReport, TableReport
from planelie.services import apps, distr, liealg
from planelie.services.casimir import casimir_metric
from planelie.services.expr import canonical, constant_relations, is_zero, sample_signs, to_text, x, y
from planelie.services.geom import conformal_check, is_killing, wedge_det
from planelie.services.parser import parse, parse_vector_field

logger = logging.getLogger(__name__)

ETA_FAMILIES = ("poly", "exp")


# ---------------------------------------------------------------------------
# loading and browsing
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _load(path: str) -> Catalog:
    with open(path, encoding="utf-8") as fh:
        catalog = Catalog.model_validate(json.load(fh))
    expected = get_settings().catalog_version
    if catalog.version != expected:
        logger.warning(f"catalog file version {catalog.version}, expected {expected}")
    logger.debug(f"loaded {len(catalog.entries)} catalog rows from {path}")
    return catalog


def load_catalog() -> Catalog:
    return _load(str(get_settings().catalog_path))


def list_entries() -> list[CatalogEntry]:
    return list(load_catalog().entries)


def entry(entry_id: str) -> CatalogEntry:
    for e in load_catalog().entries:
        if e.id.lower() == entry_id.strip().lower():
            return e
    raise UnknownEntryError(f"no catalog row {entry_id!r}")


def default_grid(entry_id: str) -> list[dict[str, sympy.Rational]]:
    """Legal combinations of the default values of every declared parameter."""
    e = entry(entry_id)
    defaults = load_catalog().default_grid
    axes = []
    for spec in e.parameters:
        raw = spec.grid or defaults.get(spec.name, [])
        axes.append([(spec.name, sympy.Rational(v)) for v in raw if spec.legal(v)])
    return [dict(combo) for combo in itertools.product(*axes)]


# ---------------------------------------------------------------------------
# instantiation
# ---------------------------------------------------------------------------

def resolve_parameters(e: CatalogEntry, params: Optional[Mapping] = None) -> dict[str, sympy.Rational]:
    """Check supplied values against the row's declarations; symbol parameters may stay unbound."""
    params = dict(params or {})
    unknown = set(params) - {p.name for p in e.parameters}
    if unknown:
        raise UsageError(f"{e.id} has no parameter(s) {', '.join(sorted(unknown))}")
    values = {}
    for spec in e.parameters:
        if spec.name in params:
            values[spec.name] = spec.check(params[spec.name])
        elif spec.kind == ParamKind.INDEX:
            raise UnboundParameterError(f"{e.id} needs a value for {spec.describe()}")
    return values


def _xi(k: int) -> str:
    return f"x^{k}"


def _eta(k: int, family: str) -> str:
    if family == "poly":
        return f"x^{k - 1}"
    if family == "exp":
        return f"x^{k - 1}*exp(x)"
    raise UsageError(f"unknown eta family {family!r}, expected one of {', '.join(ETA_FAMILIES)}")


def _bound(v, fmt: Mapping[str, str]) -> int:
    if isinstance(v, int):
        return v
    return int(sympy.sympify(v.format_map(fmt)))


def basis_templates(e: CatalogEntry, values: Mapping[str, sympy.Rational], eta: str = "poly") -> list[str]:
    fmt = {p.name: str(values[p.name]) for p in e.parameters if p.kind == ParamKind.INDEX}
    out = []
    for item in e.basis:
        if isinstance(item, RepeatTemplate):
            for k in range(_bound(item.start, fmt), _bound(item.stop, fmt) + 1):
                out.append(item.field.format_map({**fmt, item.index: k, "xi": _xi(k), "eta": _eta(k, eta)}))
        else:
            out.append(item.format_map(fmt))
    return out


def _symbol_parameters(e: CatalogEntry, values: Mapping[str, sympy.Rational]) -> tuple[Parameter, ...]:
    return tuple(
        Parameter(name=p.name, constraint=p.constraint, value=values.get(p.name))
        for p in e.parameters if p.kind == ParamKind.SYMBOL
    )


def instantiate(entry_id: str, params: Optional[Mapping] = None, eta: str = "poly") -> LieAlgebraPresentation:
    e = entry(entry_id)
    values = resolve_parameters(e, params)
    parameters = _symbol_parameters(e, values)
    basis = tuple(parse_vector_field(t, parameters) for t in basis_templates(e, values, eta))
    return LieAlgebraPresentation(basis=basis, parameters=parameters)


# ---------------------------------------------------------------------------
# cells
# ---------------------------------------------------------------------------

def _parallel(a: VectorField, b: VectorField) -> bool:
    return is_zero(wedge_det(a, b)).holds


def _in_span(V: LieAlgebraPresentation, pair: tuple[int, int], Y: VectorField) -> bool:
    i, j = pair
    return any(v[2] != 0 for v in constant_relations([V[i].components, V[j].components, Y.components]))


def _algebra_cell(e: CatalogEntry, V: LieAlgebraPresentation) -> tuple[CellReport, Optional[StructureConstants]]:
    expected = "closed, " + ("semisimple" if e.semisimple else "not semisimple")
    if e.classification:
        expected += f", {e.classification}"
    try:
        c = liealg.structure_constants(V)
    except PlanelieError as exc:
        return CellReport(column=Column.ALGEBRA, status=CellStatus.FAIL, expected=expected, found=exc.detail), None
    kappa = liealg.killing_form(c)
    semisimple = liealg.is_semisimple(kappa)
    found = f"closed (dimension {c.dimension}), " + ("semisimple" if semisimple else "not semisimple")
    ok = semisimple == e.semisimple
    if e.classification:
        try:
            iso = liealg.classify_3d_semisimple(kappa).value
        except PlanelieError as exc:
            iso = f"unclassified: {exc.detail}"
        found += f", {iso}"
        ok = ok and iso == e.classification
    status = CellStatus.PASS if ok else CellStatus.FAIL
    return CellReport(column=Column.ALGEBRA, status=status, expected=expected, found=found, evidence=c.relations(V.labels)), c


def _domain_cell(e: CatalogEntry, V: LieAlgebraPresentation, parameters) -> CellReport:
    excluded = tuple(parse(f, parameters) for f in e.domain.excluded)
    wanted = DomainReport(minors=(), rank=e.domain.rank, singular_factors=excluded)
    report = distr.generic_domain(V)
    ratio = canonical(sympy.Mul(*report.singular_factors) / sympy.Mul(*excluded))
    ok = report.rank == e.domain.rank and not ratio.has(x, y)
    mismatches = distr.domain_spot_check(V, report)
    evidence = [f"minors: {', '.join(to_text(m) for m in report.minors) or 'none'}"]
    evidence += [f"rank {r} at {p}" for p, r in mismatches]
    notes = [] if report.exact else ["isolated common zeros of the minors are not excluded"]
    return CellReport(
        column=Column.DOMAIN,
        status=CellStatus.PASS if ok and not mismatches else CellStatus.FAIL,
        expected=f"rank {wanted.rank} on {wanted.description}",
        found=f"rank {report.rank} on {report.description}",
        evidence=evidence,
        notes=notes,
    )


def _distributions_cell(e: CatalogEntry, V: LieAlgebraPresentation, parameters) -> CellReport:
    candidates = [parse_vector_field(t, parameters) for t in e.candidates]
    found = distr.find_invariant_distributions(V, candidates)
    found_text = "; ".join(D.text() for D in found) or "none"
    evidence = [f"{D.text()} ({D.provenance.value})" for D in found]
    evidence += [f"every invariant distribution is generated by {V.labels[i]}" for i in distr.forced_generators(V)]
    if e.distributions.pencil is not None:
        A, B = (parse_vector_field(t, parameters) for t in e.distributions.pencil)
        expected = f"every constant combination of {A.text()}, {B.text()}"
        ok = (
            len(found) == 1 and found[0].full_line
            and _in_span(V, found[0].pair, A) and _in_span(V, found[0].pair, B)
        )
    else:
        wanted = [parse_vector_field(t, parameters) for t in e.distributions.generators]
        expected = "; ".join(Y.text() for Y in wanted) or "none"
        ok = (
            not any(D.full_line for D in found)
            and len(found) == len(wanted)
            and all(any(_parallel(Y, D.generator) for D in found) for Y in wanted)
        )
    return CellReport(
        column=Column.DISTRIBUTIONS,
        status=CellStatus.PASS if ok else CellStatus.FAIL,
        expected=expected,
        found=found_text,
        evidence=evidence,
    )


def _all_killing(V: LieAlgebraPresentation, g: CovTensor2) -> Verdict:
    return Verdict.all_of(is_killing(X, g) for X in V)


def _kill_witnesses(
    e: CatalogEntry, V: LieAlgebraPresentation, c: Optional[StructureConstants], parameters
) -> list[tuple[str, CovTensor2]]:
    """Candidate Killing metrics: Casimir metrics, then constant metrics in commuting frames."""
    found = []
    if c is not None:
        for r in casimir_metric(V, c):
            if not r.degenerate and r.all_invariant:
                found.append((f"Casimir metric of {r.casimir.text()} ({r.source.value})", r.metric))
    frames = [(V[i], V[j]) for i, j in distr.commuting_pairs(V).independent]
    if e.witness_frame:
        frames.append(tuple(parse_vector_field(t, parameters) for t in e.witness_frame))
    for Y1, Y2 in frames:
        ob = distr.killing_obstruction_in_frame(V, Y1, Y2)
        found += [(f"constant metric in the coframe of ({Y1.text()}, {Y2.text()})", g) for g in ob.witnesses]
    return found


def _kill_plus(
    e: CatalogEntry, V: LieAlgebraPresentation, c: Optional[StructureConstants], parameters
) -> tuple[CellReport, list[CovTensor2]]:
    verified, evidence = [], []
    for source, g in _kill_witnesses(e, V, c, parameters):
        verdict = _all_killing(V, g)
        evidence.append(f"{source}: {g.text()} ({verdict.tag('Killing', 'not Killing')})")
        if verdict.holds:
            verified.append(g)
    status = CellStatus.PASS if verified else CellStatus.FAIL
    found = f"Killing metric {verified[0].text()}" if verified else "no Killing metric found"
    return CellReport(column=Column.KILL, status=status, expected="+", found=found, evidence=evidence), verified


def _killing_reference_notes(V: LieAlgebraPresentation) -> list[str]:
    return [
        f"every basis element is a Killing field of {name} in these coordinates"
        for name, g in REFERENCE_METRICS.items() if _all_killing(V, g).holds
    ]


def _kill_minus(V: LieAlgebraPresentation) -> CellReport:
    pairs = distr.commuting_pairs(V)
    if pairs.dependent:
        i, j = pairs.dependent[0]
        return CellReport(
            column=Column.KILL, status=CellStatus.PASS, expected="-", found="no Killing metric",
            evidence=[
                f"{V.labels[j]} is a function multiple of {V.labels[i]} and commutes with it: "
                f"a metric making both Killing has g({V.labels[i]}, .) = 0"
            ],
        )
    evidence = []
    for i, j in pairs.independent:
        ob = distr.killing_obstruction_constant_frame(V, i, j)
        summary = f"constant metrics in the coframe of ({V.labels[i]}, {V.labels[j]}): dimension {ob.dimension}"
        if not ob.admits_nondegenerate:
            kind = "none nondegenerate" if ob.dimension else "none"
            return CellReport(
                column=Column.KILL, status=CellStatus.PASS, expected="-", found="no Killing metric",
                evidence=evidence + [f"{summary}, {kind}"],
            )
        evidence.append(f"{summary}, witness {ob.witness.text()}")
    if evidence:
        return CellReport(column=Column.KILL, status=CellStatus.FAIL, expected="-", found="Killing metric exists", evidence=evidence)
    triple = distr.killing_triple_obstruction(V)
    if triple is not None:
        a, b, cc = (V.labels[k] for k in triple)
        evidence.append(f"{a}, {b}, {cc}: [{a}, {b}] = [{b}, {cc}] = 0, [{a}, {cc}] != 0, {a} parallel to {cc}")
    logger.warning("Kill '-' without a commuting independent pair is a theory-only claim")
    return CellReport(
        column=Column.KILL,
        status=CellStatus.THEORY_ONLY,
        expected="-",
        found="no commuting independent pair in the basis",
        evidence=evidence,
        notes=_killing_reference_notes(V),
    )


def _kill_cell(
    e: CatalogEntry, V: LieAlgebraPresentation, values, c: Optional[StructureConstants], parameters
) -> tuple[CellReport, list[CovTensor2]]:
    if e.kill_flag(values) == KillFlag.PLUS:
        return _kill_plus(e, V, c, parameters)
    return _kill_minus(V), []


def _signature_matches(g: CovTensor2, definite: bool) -> bool:
    return sample_signs(g.det()) == ({1} if definite else {-1})


def _conf_cell(e: CatalogEntry, V: LieAlgebraPresentation, witnesses: list[CovTensor2]) -> CellReport:
    if not e.conf:
        return _conf_minus(V)
    evidence, missing = [], []
    for name in e.conf:
        g = REFERENCE_METRICS[name]
        if all(conformal_check(X, g)[1].holds for X in V):
            evidence.append(f"every basis element has a conformal factor for {name}")
            continue
        definite = name == "gE"
        w = next((w for w in witnesses if _signature_matches(w, definite)), None)
        if w is not None:
            kind = "definite" if definite else "indefinite"
            evidence.append(f"{name}: the basis is Killing, hence conformal, for the {kind} metric {w.text()}")
            continue
        missing.append(name)
    return CellReport(
        column=Column.CONF,
        status=CellStatus.FAIL if missing else CellStatus.PASS,
        expected=", ".join(e.conf),
        found=", ".join(n for n in e.conf if n not in missing) or "none",
        evidence=evidence + [f"{n}: no conformal witness" for n in missing],
    )


def _conf_minus(V: LieAlgebraPresentation) -> CellReport:
    evidence, notes = [], []
    for name, g in REFERENCE_METRICS.items():
        bad = next((label for label, X in zip(V.labels, V) if not conformal_check(X, g)[1].holds), None)
        if bad is None:
            notes.append(f"every basis element is conformal for {name} in these coordinates")
        else:
            evidence.append(f"{bad} has no conformal factor for {name}")
    return CellReport(
        column=Column.CONF,
        status=CellStatus.THEORY_ONLY,
        expected="-",
        found="; ".join(evidence) or "conformal in these coordinates",
        evidence=evidence,
        notes=notes,
    )


def _guarded(column: Column, expected: str, fn: Callable, *args):
    try:
        return fn(*args)
    except PlanelieError as exc:
        logger.warning(f"{column.value} cell failed: {exc.detail}")
        return CellReport(column=column, status=CellStatus.FAIL, expected=expected, found=f"error: {exc.detail}")


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_entry(entry_id: str, params: Optional[Mapping] = None, eta: str = "poly") -> EntryReport:
    e = entry(entry_id)
    values = resolve_parameters(e, params)
    missing = [p.name for p in e.parameters if p.name not in values]
    if missing:
        raise UnboundParameterError(f"{e.id}: verification needs values for {', '.join(missing)}")
    parameters = _symbol_parameters(e, values)
    V = instantiate(e.id, values, eta)
    report = EntryReport(
        id=e.id,
        params={k: str(v) for k, v in values.items()},
        instance=bool(e.parameters) or any(isinstance(b, RepeatTemplate) for b in e.basis),
        basis=V.texts(),
    )
    algebra, c = _algebra_cell(e, V)
    cells = [algebra]
    cells.append(_guarded(Column.DOMAIN, f"rank {e.domain.rank}", _domain_cell, e, V, parameters))
    cells.append(_guarded(Column.DISTRIBUTIONS, "catalog distributions", _distributions_cell, e, V, parameters))
    kill = _guarded(Column.KILL, e.kill_flag(values).value, _kill_cell, e, V, values, c, parameters)
    kill, witnesses = kill if isinstance(kill, tuple) else (kill, [])
    cells.append(kill)
    cells.append(_guarded(Column.CONF, ", ".join(e.conf) or "-", _conf_cell, e, V, witnesses))
    errata = [line for key in e.errata for line in apps.ERRATA[key]().lines()]
    report = report.model_copy(update={"cells": cells, "errata": errata})
    logger.info(f"{report.label()}: {report.status.value}")
    return report


def verify_rows(entry_id: str, params: Optional[Mapping] = None, eta: str = "poly") -> list[EntryReport]:
    """One report for the given parameters, or one per point of the default grid when none are given."""
    e = entry(entry_id)
    if params or not e.parameters:
        return [verify_entry(e.id, params, eta)]
    return [verify_entry(e.id, point, eta) for point in default_grid(e.id)]


def verify_all(
    ids: Optional[Iterable[str]] = None, grid: Optional[Mapping[str, list]] = None, eta: str = "poly"
) -> TableReport:
    """
    Every row (or ``ids``) over its default grid, or over ``grid[id]`` when
    given; ordered by catalog order. ``eta`` picks the template family of the
    rows built from one.
    """
    grid = grid or {}
    wanted = [entry(i).id for i in ids] if ids else [e.id for e in list_entries()]
    tasks = [(i, point) for i in wanted for point in (grid.get(i) or default_grid(i))]
    workers = get_settings().verify_workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda t: verify_entry(*t, eta), tasks))
    else:
        reports = [verify_entry(i, point, eta) for i, point in tasks]
    table = TableReport(entries=reports)
    logger.info(f"catalog verification: {table.counts()}")
    return table
