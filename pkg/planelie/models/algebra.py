# planelie/models/algebra.py
"""
Lie algebras presented by bases of planar vector fields, their structure
constants, Killing forms and quadratic Casimir elements.
"""
from enum import Enum
from typing import Any

import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from planelie.core.errors import DependentBasisError, InconsistentInputError
from planelie.models.fields import VectorField
from planelie.models.parameter import Parameter
from planelie.services.expr import canonical, constant_relations, to_text

_FROZEN = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class IsoClass(str, Enum):
    SL2 = "sl2"
    SO3 = "so3"


class LieAlgebraPresentation(BaseModel):
    """An ordered basis of vector fields, pairwise (in fact jointly) independent over the reals."""

    model_config = _FROZEN

    basis: tuple[VectorField, ...] = Field(..., min_length=1)
    labels: tuple[str, ...] = Field(default=(), validate_default=True)
    parameters: tuple[Parameter, ...] = ()

    @field_validator("labels")
    @classmethod
    def default_labels(cls, v, info):
        basis = info.data.get("basis") or ()
        if not v:
            return tuple(f"X{i + 1}" for i in range(len(basis)))
        if len(v) != len(basis):
            raise ValueError(f"{len(v)} labels for {len(basis)} basis elements")
        return v

    @model_validator(mode="after")
    def independent(self):
        relations = constant_relations([X.components for X in self.basis])
        if relations:
            combo = " + ".join(f"({to_text(a)})*{l}" for a, l in zip(relations[0], self.labels) if a != 0)
            raise DependentBasisError(f"basis elements are linearly dependent: {combo} = 0")
        return self

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __getitem__(self, i: int) -> VectorField:
        return self.basis[i]

    def __iter__(self):
        return iter(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def free_parameters(self) -> tuple[Parameter, ...]:
        return tuple(p for p in self.parameters if not p.bound)

    def texts(self) -> list[str]:
        return [X.text() for X in self.basis]


def _symbolic(v: Any) -> sympy.Expr:
    return canonical(sympy.sympify(v))


class StructureConstants(BaseModel):
    """c[i][j][k] with [X_i, X_j] = sum_k c[i][j][k] X_k."""

    model_config = _FROZEN

    c: tuple[tuple[tuple[sympy.Expr, ...], ...], ...]

    @field_validator("c", mode="before")
    @classmethod
    def as_expressions(cls, v):
        return tuple(tuple(tuple(_symbolic(a) for a in row) for row in plane) for plane in v)

    @model_validator(mode="after")
    def antisymmetric_and_jacobi(self):
        n = self.dimension
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if canonical(self.c[i][j][k] + self.c[j][i][k]) != 0:
                        raise InconsistentInputError(f"structure constants are not antisymmetric at ({i + 1}, {j + 1}, {k + 1})")
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for l in range(n):
                        s = sum(
                            self.c[i][j][m] * self.c[m][k][l]
                            + self.c[j][k][m] * self.c[m][i][l]
                            + self.c[k][i][m] * self.c[m][j][l]
                            for m in range(n)
                        )
                        if canonical(s) != 0:
                            raise InconsistentInputError(f"Jacobi identity fails for ({i + 1}, {j + 1}, {k + 1})")
        return self

    @property
    def dimension(self) -> int:
        return len(self.c)

    def __getitem__(self, i):
        return self.c[i]

    def bracket_coefficients(self, i: int, j: int) -> tuple[sympy.Expr, ...]:
        return self.c[i][j]

    def ad(self, k: int) -> sympy.Matrix:
        """Matrix of ad_k: column i holds the coordinates of [e_k, e_i]."""
        n = self.dimension
        return sympy.Matrix(n, n, lambda m, i: self.c[k][i][m])

    def relations(self, labels=None) -> list[str]:
        """Nonzero brackets as text, e.g. ``[X1, X2] = X1``."""
        n = self.dimension
        labels = labels or [f"X{i + 1}" for i in range(n)]
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                terms = [_coefficient_term(a, labels[k]) for k, a in enumerate(self.c[i][j]) if a != 0]
                if terms:
                    out.append(f"[{labels[i]}, {labels[j]}] = {' + '.join(terms)}")
        return out

    def is_abelian(self) -> bool:
        return all(a == 0 for plane in self.c for row in plane for a in row)


def _coefficient_term(a: sympy.Expr, label: str) -> str:
    if a == 1:
        return label
    return f"({to_text(a)})*{label}"


def _immutable_symmetric(v, what: str) -> sympy.ImmutableMatrix:
    m = sympy.ImmutableMatrix(v).applyfunc(canonical)
    if m.rows != m.cols:
        raise ValueError(f"{what} must be square, got {m.rows}x{m.cols}")
    if any(canonical(m[i, j] - m[j, i]) != 0 for i in range(m.rows) for j in range(i)):
        raise ValueError(f"{what} must be symmetric")
    return m


class KillingFormMatrix(BaseModel):
    model_config = _FROZEN

    matrix: sympy.ImmutableMatrix

    @field_validator("matrix", mode="before")
    @classmethod
    def symmetric(cls, v):
        return _immutable_symmetric(v, "Killing form")

    @property
    def dimension(self) -> int:
        return self.matrix.rows

    def det(self) -> sympy.Expr:
        return canonical(self.matrix.det())

    def rows(self) -> list[list[str]]:
        return [[to_text(a) for a in self.matrix.row(i)] for i in range(self.dimension)]


class CasimirElement(BaseModel):
    """sum_ij C[i][j] v_i v_j in the degree-2 symmetric tensors of the algebra."""

    model_config = _FROZEN

    matrix: sympy.ImmutableMatrix

    @field_validator("matrix", mode="before")
    @classmethod
    def symmetric(cls, v):
        return _immutable_symmetric(v, "Casimir matrix")

    @property
    def dimension(self) -> int:
        return self.matrix.rows

    def scaled(self, s) -> "CasimirElement":
        return CasimirElement(matrix=self.matrix * sympy.sympify(s))

    def text(self) -> str:
        n = self.dimension
        terms = []
        for i in range(n):
            for j in range(n):
                a = self.matrix[i, j]
                if a != 0:
                    terms.append(_coefficient_term(a, f"v{i + 1}*v{j + 1}"))
        return " + ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.text()
