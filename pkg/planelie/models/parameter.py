# planelie/models/parameter.py
from enum import Enum
from typing import Optional

import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator

from planelie.core.errors import ConstraintViolationError


class Constraint(str, Enum):
    FREE = "free"
    NONZERO = "nonzero"
    POSITIVE = "positive"
    INTEGER = "integer"


_ASSUMPTIONS = {
    Constraint.FREE: {"real": True},
    Constraint.NONZERO: {"real": True, "nonzero": True},
    Constraint.POSITIVE: {"positive": True},
    Constraint.INTEGER: {"integer": True},
}


class Parameter(BaseModel):
    """A named rational parameter (alpha, c, r, ...) with a sign constraint."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = Field(..., pattern=r"^[A-Za-z_][A-Za-z0-9_]*$")
    constraint: Constraint = Constraint.FREE
    value: Optional[sympy.Rational] = None

    @field_validator("value", mode="before")
    @classmethod
    def _rational(cls, v):
        if v is None:
            return None
        try:
            return sympy.Rational(str(v).strip())
        except (TypeError, ValueError, sympy.SympifyError):
            raise ValueError(f"not a rational number: {v!r}")

    @field_validator("value")
    @classmethod
    def _respects_constraint(cls, v, info):
        if v is not None:
            check_constraint(info.data.get("name", "?"), info.data.get("constraint", Constraint.FREE), v)
        return v

    @property
    def symbol(self) -> sympy.Symbol:
        return sympy.Symbol(self.name, **_ASSUMPTIONS[self.constraint])

    @property
    def bound(self) -> bool:
        return self.value is not None

    def bind(self, value) -> "Parameter":
        return Parameter(name=self.name, constraint=self.constraint, value=value)


def check_constraint(name: str, constraint: Constraint, value) -> None:
    value = sympy.sympify(value)
    if constraint == Constraint.NONZERO and value.is_zero:
        raise ConstraintViolationError(f"parameter {name} is declared nonzero, cannot bind it to 0")
    if constraint == Constraint.POSITIVE and value.is_positive is False:
        raise ConstraintViolationError(f"parameter {name} is declared positive, cannot bind it to {value}")
    if constraint == Constraint.INTEGER and value.is_integer is False:
        raise ConstraintViolationError(f"parameter {name} is declared integer, cannot bind it to {value}")
