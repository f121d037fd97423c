# planelie/models/catalog.py
"""Rows of the planar classification as data: basis templates, parameters and expected columns."""
from enum import Enum
from typing import Dict, List, Optional, Union

import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from planelie.core.errors import ConstraintViolationError
from planelie.models.parameter import Constraint, check_constraint


class StructuralClass(str, Enum):
    PRIMITIVE = "primitive"
    ONE_IMPRIMITIVE = "one-imprimitive"
    MULTIPLY_IMPRIMITIVE = "multiply-imprimitive"


class KillFlag(str, Enum):
    PLUS = "+"
    MINUS = "-"


class ParamKind(str, Enum):
    # a symbol substituted into the basis expressions (alpha, c)
    SYMBOL = "symbol"
    # an integer that shapes the basis itself (r)
    INDEX = "index"


class ParamSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    kind: ParamKind = ParamKind.SYMBOL
    constraint: Constraint = Constraint.FREE
    # inclusive lower bound
    minimum: Optional[str] = None
    # exclusive bound on the absolute value
    abs_below: Optional[str] = None
    # explicit grid; empty means the default grid for this name
    grid: List[str] = []

    def check(self, value) -> sympy.Rational:
        try:
            v = sympy.Rational(str(value).strip())
        except (TypeError, ValueError, sympy.SympifyError):
            raise ConstraintViolationError(f"parameter {self.name}: not a rational number: {value!r}")
        check_constraint(self.name, self.constraint, v)
        if self.kind == ParamKind.INDEX and not v.is_integer:
            raise ConstraintViolationError(f"parameter {self.name} must be an integer, got {v}")
        if self.minimum is not None and v < sympy.Rational(self.minimum):
            raise ConstraintViolationError(f"parameter {self.name} must be >= {self.minimum}, got {v}")
        if self.abs_below is not None and not abs(v) < sympy.Rational(self.abs_below):
            raise ConstraintViolationError(f"parameter {self.name} must satisfy |{self.name}| < {self.abs_below}, got {v}")
        return v

    def legal(self, value) -> bool:
        try:
            self.check(value)
        except ConstraintViolationError:
            return False
        return True

    def describe(self) -> str:
        parts = [] if self.constraint == Constraint.FREE else [self.constraint.value]
        if self.minimum is not None:
            parts.append(f">= {self.minimum}")
        if self.abs_below is not None:
            parts.append(f"|{self.name}| < {self.abs_below}")
        return f"{self.name} ({', '.join(parts) or 'real'})"


class RepeatTemplate(BaseModel):
    """``field`` formatted for k = from..to; bounds may reference {r}."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    index: str = Field("k", alias="for")
    start: Union[int, str] = Field(alias="from")
    stop: Union[int, str] = Field(alias="to")
    field: str


BasisItem = Union[str, RepeatTemplate]


class ExpectedDistributions(BaseModel):
    model_config = ConfigDict(frozen=True)

    generators: List[str] = []
    # basis pair spanning a line of invariant constant combinations
    pencil: Optional[List[str]] = None

    @field_validator("pencil")
    @classmethod
    def pair(cls, v):
        if v is not None and len(v) != 2:
            raise ValueError("a pencil is spanned by exactly two fields")
        return v


class ExpectedDomain(BaseModel):
    model_config = ConfigDict(frozen=True)

    # factors f with the regular set {f != 0}; empty for the whole plane
    excluded: List[str] = []
    rank: int = Field(2, ge=1, le=2)


class CatalogEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    cls: StructuralClass
    iso: str
    semisimple: bool = False
    classification: Optional[str] = None
    parameters: List[ParamSpec] = []
    basis: List[BasisItem]
    domain: ExpectedDomain = ExpectedDomain()
    distributions: ExpectedDistributions = ExpectedDistributions()
    candidates: List[str] = []
    kill: KillFlag
    # parameter values at which the Kill flag flips to "+"
    kill_plus_when: Dict[str, str] = {}
    conf: List[str] = []
    witness_frame: Optional[List[str]] = None
    errata: List[str] = []
    notes: Optional[str] = None

    @field_validator("conf")
    @classmethod
    def reference_names(cls, v):
        unknown = set(v) - {"gE", "gH"}
        if unknown:
            raise ValueError(f"unknown reference metric(s) {sorted(unknown)}")
        return v

    @model_validator(mode="after")
    def declared_names(self):
        names = {p.name for p in self.parameters}
        extra = set(self.kill_plus_when) - names
        if extra:
            raise ValueError(f"{self.id}: kill_plus_when names undeclared parameter(s) {sorted(extra)}")
        return self

    def spec(self, name: str) -> Optional[ParamSpec]:
        return next((p for p in self.parameters if p.name == name), None)

    def kill_flag(self, values: Dict[str, sympy.Rational]) -> KillFlag:
        if self.kill_plus_when and all(
            values.get(k) == sympy.Rational(v) for k, v in self.kill_plus_when.items()
        ):
            return KillFlag.PLUS
        return self.kill


class Catalog(BaseModel):
    model_config = ConfigDict(frozen=True)

    version: int
    default_grid: Dict[str, List[str]] = {}
    entries: List[CatalogEntry]

    @model_validator(mode="after")
    def unique_ids(self):
        ids = [e.id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate catalog ids")
        return self
