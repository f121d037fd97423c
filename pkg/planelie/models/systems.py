# planelie/models/systems.py
"""Lie systems as t-dependent combinations of a basis, with their Casimir geometry and erratum reports."""
from typing import Optional

import sympy
from pydantic import BaseModel, ConfigDict, model_validator

from planelie.models.algebra import IsoClass, KillingFormMatrix, LieAlgebraPresentation, StructureConstants
from planelie.models.casimir import CasimirMetricResult
from planelie.models.fields import VectorField
from planelie.models.verdict import Verdict

_FROZEN = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class LieSystemDecomposition(BaseModel):
    """X(t, p) = sum_i b_i(t) X_i(p); the b_i are opaque labels, never functions of x, y."""

    model_config = _FROZEN

    algebra: LieAlgebraPresentation
    coefficients: tuple[str, ...]

    @model_validator(mode="after")
    def one_coefficient_per_field(self):
        if len(self.coefficients) != self.algebra.dimension:
            raise ValueError(f"{len(self.coefficients)} coefficients for {self.algebra.dimension} fields")
        return self

    @property
    def basis(self) -> tuple[VectorField, ...]:
        return self.algebra.basis

    def text(self) -> str:
        terms = [f"{b}*{label}" for b, label in zip(self.coefficients, self.algebra.labels) if b != "0"]
        return " + ".join(terms)


class SystemGeometry(BaseModel):
    """Structure, classification and the Casimir metric of a Lie system's algebra."""

    model_config = _FROZEN

    system: LieSystemDecomposition
    structure: StructureConstants
    killing: KillingFormMatrix
    semisimple: bool
    classification: Optional[IsoClass] = None
    casimir: CasimirMetricResult
    hamiltonian: tuple[Verdict, ...] = ()
    curvature: Optional[sympy.Expr] = None


class ErratumItem(BaseModel):
    """One computed claim: the object examined and whether the property holds for it."""

    model_config = ConfigDict(frozen=True)

    label: str
    subject: str
    holds: bool
    certainty: str
    residuals: tuple[str, ...] = ()


class ErratumReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    key: str
    description: str
    items: tuple[ErratumItem, ...]

    def lines(self) -> list[str]:
        out = [self.description]
        for item in self.items:
            verdict = "holds" if item.holds else "fails"
            out.append(f"{item.label}: {item.subject} {verdict} ({item.certainty})")
            out.extend(f"  {r}" for r in item.residuals)
        return out
