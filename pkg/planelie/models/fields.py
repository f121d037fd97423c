# planelie/models/fields.py
"""Vector fields, symmetric 2-tensors and 2-forms on the plane (immutable, canonicalised)."""
from enum import Enum
from typing import Any

import sympy
from pydantic import BaseModel, ConfigDict, field_validator

from planelie.services.expr import all_zero, canonical, substitute, to_text
from planelie.models.verdict import Verdict

_FROZEN = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def _canonical_component(v: Any) -> sympy.Expr:
    if isinstance(v, str):
        raise TypeError("components are expressions, parse text with planelie.services.parser")
    return canonical(sympy.sympify(v, strict=True) if not isinstance(v, sympy.Basic) else v)


def _term(coeff: sympy.Expr, unit: str) -> str:
    if coeff == 1:
        return unit
    return f"({to_text(coeff)})*{unit}"


def _join(terms: list[str]) -> str:
    return " + ".join(terms) if terms else "0"


class VectorField(BaseModel):
    model_config = _FROZEN

    xx: sympy.Expr
    yy: sympy.Expr

    def __init__(self, xx: Any = 0, yy: Any = 0, **data):
        super().__init__(xx=xx, yy=yy, **data)

    @field_validator("xx", "yy", mode="before")
    @classmethod
    def canonicalize(cls, v):
        return _canonical_component(v)

    @property
    def components(self) -> tuple[sympy.Expr, sympy.Expr]:
        return (self.xx, self.yy)

    def is_zero(self) -> Verdict:
        return all_zero(self.components)

    def scaled(self, s: Any) -> "VectorField":
        return VectorField(s * self.xx, s * self.yy)

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.xx + other.xx, self.yy + other.yy)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.xx - other.xx, self.yy - other.yy)

    def __neg__(self) -> "VectorField":
        return self.scaled(-1)

    def substitute(self, bindings) -> "VectorField":
        return VectorField(substitute(self.xx, bindings), substitute(self.yy, bindings))

    def text(self) -> str:
        return _join([_term(c, u) for c, u in ((self.xx, "dx"), (self.yy, "dy")) if c != 0])

    def __str__(self) -> str:
        return self.text()


class _Symmetric2(BaseModel):
    model_config = _FROZEN

    @property
    def components(self) -> tuple[sympy.Expr, sympy.Expr, sympy.Expr]:
        raise NotImplementedError

    def matrix(self) -> sympy.Matrix:
        a, b, c = self.components
        return sympy.Matrix([[a, b], [b, c]])

    def det(self) -> sympy.Expr:
        a, b, c = self.components
        return canonical(a * c - b * b)

    def is_zero(self) -> Verdict:
        return all_zero(self.components)

    def _units(self) -> tuple[str, str, str]:
        raise NotImplementedError

    def text(self) -> str:
        return _join([_term(c, u) for c, u in zip(self.components, self._units()) if c != 0])

    def __str__(self) -> str:
        return self.text()


class CovTensor2(_Symmetric2):
    """Symmetric covariant tensor g_xx dx dx + g_xy (dx dy + dy dx) + g_yy dy dy."""

    gxx: sympy.Expr
    gxy: sympy.Expr
    gyy: sympy.Expr

    def __init__(self, gxx: Any = 0, gxy: Any = 0, gyy: Any = 0, **data):
        super().__init__(gxx=gxx, gxy=gxy, gyy=gyy, **data)

    @field_validator("gxx", "gxy", "gyy", mode="before")
    @classmethod
    def canonicalize(cls, v):
        return _canonical_component(v)

    @property
    def components(self):
        return (self.gxx, self.gxy, self.gyy)

    @classmethod
    def from_matrix(cls, m) -> "CovTensor2":
        return cls(m[0, 0], m[0, 1], m[1, 1])

    def scaled(self, s: Any) -> "CovTensor2":
        return CovTensor2(*(s * c for c in self.components))

    def __add__(self, other: "CovTensor2") -> "CovTensor2":
        return CovTensor2(*(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "CovTensor2") -> "CovTensor2":
        return CovTensor2(*(a - b for a, b in zip(self.components, other.components)))

    def _units(self):
        return ("dxdx", "dxdy", "dydy")


class ContraTensor2(_Symmetric2):
    """Symmetric contravariant tensor G^xx dx⊗dx + G^xy (dx⊗dy + dy⊗dx) + G^yy dy⊗dy (dx, dy as derivations)."""

    Gxx: sympy.Expr
    Gxy: sympy.Expr
    Gyy: sympy.Expr

    def __init__(self, Gxx: Any = 0, Gxy: Any = 0, Gyy: Any = 0, **data):
        super().__init__(Gxx=Gxx, Gxy=Gxy, Gyy=Gyy, **data)

    @field_validator("Gxx", "Gxy", "Gyy", mode="before")
    @classmethod
    def canonicalize(cls, v):
        return _canonical_component(v)

    @property
    def components(self):
        return (self.Gxx, self.Gxy, self.Gyy)

    @classmethod
    def from_matrix(cls, m) -> "ContraTensor2":
        return cls(m[0, 0], m[0, 1], m[1, 1])

    def scaled(self, s: Any) -> "ContraTensor2":
        return ContraTensor2(*(s * c for c in self.components))

    def _units(self):
        return ("dxdx", "dxdy", "dydy")


class TwoForm(BaseModel):
    """coefficient * dx∧dy"""

    model_config = _FROZEN

    coefficient: sympy.Expr

    def __init__(self, coefficient: Any = 0, **data):
        super().__init__(coefficient=coefficient, **data)

    @field_validator("coefficient", mode="before")
    @classmethod
    def canonicalize(cls, v):
        return _canonical_component(v)

    def text(self) -> str:
        return _term(self.coefficient, "dx^dy") if self.coefficient != 0 else "0"

    def __str__(self) -> str:
        return self.text()


G_E = CovTensor2(1, 0, 1)
G_H = CovTensor2(0, 1, 0)
REFERENCE_METRICS = {"gE": G_E, "gH": G_H}


class Sign(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    INDEFINITE = "indefinite"


class ConformalRatio(BaseModel):
    """g1 = ratio * g2, with the sign of the ratio over the sample points."""

    model_config = _FROZEN

    ratio: sympy.Expr
    sign: Sign
    verdict: Verdict
