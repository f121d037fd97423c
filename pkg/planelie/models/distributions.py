# planelie/models/distributions.py
from enum import Enum
from typing import Optional

import sympy
from pydantic import BaseModel, ConfigDict, field_validator

from planelie.models.fields import CovTensor2, VectorField
from planelie.services.expr import to_text

_FROZEN = ConfigDict(frozen=True, arbitrary_types_allowed=True)

LAMBDA_X = sympy.Symbol("lambda_x", real=True)
LAMBDA_Y = sympy.Symbol("lambda_y", real=True)


class Provenance(str, Enum):
    PENCIL = "pencil"
    BASIS = "basis"
    CANDIDATE = "candidate"


class Rank1Distribution(BaseModel):
    """Direction field spanned by ``generator``; a pencil generator carries the symbols lambda_x, lambda_y."""

    model_config = _FROZEN

    generator: VectorField
    provenance: Provenance = Provenance.CANDIDATE
    # basis indices (0-based) of a pencil, or of the pair a pencil point came from
    pair: Optional[tuple[int, int]] = None
    coefficients: Optional[tuple[sympy.Expr, sympy.Expr]] = None
    full_line: bool = False

    @field_validator("generator")
    @classmethod
    def nonzero(cls, v):
        if all(c == 0 for c in v.components):
            raise ValueError("a distribution generator cannot be the zero field")
        return v

    def text(self) -> str:
        return self.generator.text()


class PencilSolution(BaseModel):
    """Projective classes (l1:l2) with l1 X_i + l2 X_j spanning an invariant distribution."""

    model_config = _FROZEN

    pair: tuple[int, int]
    full_line: bool = False
    points: tuple[tuple[sympy.Expr, sympy.Expr], ...] = ()

    def texts(self) -> list[str]:
        if self.full_line:
            return ["(lambda_x : lambda_y)"]
        return [f"({to_text(a)} : {to_text(b)})" for a, b in self.points]


class DomainReport(BaseModel):
    model_config = _FROZEN

    minors: tuple[sympy.Expr, ...]
    rank: int
    # factors whose common zero set is removed; positive and x,y-free factors are dropped
    singular_factors: tuple[sympy.Expr, ...] = ()
    # the subset of singular_factors where a component has a pole
    pole_factors: tuple[sympy.Expr, ...] = ()
    # False when the minors may share isolated zeros outside the listed factors
    exact: bool = True

    @property
    def description(self) -> str:
        if not self.singular_factors:
            return "R^2"
        product = " * ".join(f"({to_text(f)})" for f in self.singular_factors)
        return f"{{(x, y) : {product} != 0}}"


class CommutingPairs(BaseModel):
    independent: tuple[tuple[int, int], ...] = ()
    dependent: tuple[tuple[int, int], ...] = ()


class ObstructionResult(BaseModel):
    """Constant metrics sum c_kl theta^k theta^l in the coframe dual to (Y1, Y2) left invariant by the algebra."""

    model_config = _FROZEN

    frame: tuple[VectorField, VectorField]
    pair: Optional[tuple[int, int]] = None
    # only a commuting frame turns an empty solution space into an obstruction
    commuting: bool = True
    # solution basis as (c11, c12, c22)
    constants: tuple[tuple[sympy.Expr, sympy.Expr, sympy.Expr], ...] = ()
    metrics: tuple[CovTensor2, ...] = ()
    admits_nondegenerate: bool = False
    witnesses: tuple[CovTensor2, ...] = ()
    definite: tuple[bool, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.constants)

    @property
    def witness(self) -> Optional[CovTensor2]:
        """A nondegenerate solution, definite when there is one."""
        for g, d in zip(self.witnesses, self.definite):
            if d:
                return g
        return self.witnesses[0] if self.witnesses else None

    def witness_with_signature(self, definite: bool) -> Optional[CovTensor2]:
        return next((g for g, d in zip(self.witnesses, self.definite) if d == definite), None)
