# planelie/cli/deps.py
"""Shared argument loaders for the commands: parameters, fields, metrics and algebras."""
import functools
from pathlib import Path
from typing import Iterable, Optional

import click

from planelie.core.errors import ConstraintViolationError, UsageError
from planelie.models.algebra import LieAlgebraPresentation
from planelie.models.fields import ContraTensor2, CovTensor2, VectorField
from planelie.models.parameter import Constraint, Parameter
from planelie.services import catalog
from planelie.services.parser import parse_algebra, parse_metric, parse_parameter_bindings, parse_vector_field


def get_parameters(bindings: Iterable[str], symbols: Iterable[str]) -> tuple[Parameter, ...]:
    """``--param name=value`` binds a rational; ``--symbol name[:constraint]`` declares a free one."""
    out = {}
    for spec in symbols:
        name, _, constraint = spec.partition(":")
        try:
            out[name] = Parameter(name=name.strip(), constraint=Constraint(constraint.strip() or "free"))
        except ValueError as exc:
            raise UsageError(f"bad --symbol {spec!r}: {exc}")
    for name, value in parse_parameter_bindings(bindings).items():
        constraint = out[name].constraint if name in out else Constraint.FREE
        try:
            out[name] = Parameter(name=name, constraint=constraint, value=value)
        except ValueError as exc:
            raise ConstraintViolationError(f"bad --param {name}={value}: {exc}")
    return tuple(out.values())


def get_field(text: str, parameters: tuple[Parameter, ...]) -> VectorField:
    return parse_vector_field(text, parameters)


def get_metric(text: str, parameters: tuple[Parameter, ...]) -> CovTensor2:
    return parse_metric(text, parameters)


def get_contra(text: str, parameters: tuple[Parameter, ...]) -> ContraTensor2:
    return ContraTensor2(*parse_metric(text, parameters).components)


def get_algebra(path: Optional[str], entry_id: Optional[str], params: Iterable[str], eta: str) -> LieAlgebraPresentation:
    bindings = parse_parameter_bindings(params)
    if (path is None) == (entry_id is None):
        raise UsageError("give either an algebra file or --catalog ID")
    if entry_id is not None:
        return catalog.instantiate(entry_id, bindings, eta)
    return parse_algebra(Path(path).read_text(encoding="utf-8"), bindings)


def parameter_options(fn):
    fn = click.option("--symbol", "symbols", multiple=True, metavar="NAME[:CONSTRAINT]",
                      help="Declare a symbolic parameter (free, nonzero, positive or integer).")(fn)
    fn = click.option("--param", "params", multiple=True, metavar="NAME=VALUE",
                      help="Bind a parameter to a rational value.")(fn)
    return fn


def algebra_source(fn):
    """PATH argument or --catalog ID, with --param bindings and the eta family of catalog rows."""

    @click.argument("path", required=False, type=click.Path(exists=True, dir_okay=False))
    @click.option("--catalog", "entry_id", metavar="ID", help="Use a catalog row instead of an algebra file.")
    @click.option("--param", "params", multiple=True, metavar="NAME=VALUE", help="Parameter binding.")
    @click.option("--eta", type=click.Choice(catalog.ETA_FAMILIES), default="poly", show_default=True,
                  help="eta_k family of catalog rows.")
    @functools.wraps(fn)
    def wrapper(path, entry_id, params, eta, **kwargs):
        algebra = get_algebra(path, entry_id, params, eta)
        inputs = {"source": path if path is not None else f"catalog {entry_id}", "basis": algebra.texts()}
        return fn(algebra=algebra, inputs=inputs, **kwargs)

    return wrapper
