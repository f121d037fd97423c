# planelie/models/casimir.py
"""Casimir tensor fields of an algebra: invariance per basis field, induced metric and symplectic form."""
from enum import Enum
from typing import Optional

import sympy
from pydantic import BaseModel, ConfigDict

from planelie.models.algebra import CasimirElement
from planelie.models.fields import ContraTensor2, CovTensor2, TwoForm
from planelie.models.verdict import Verdict

_FROZEN = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class CasimirSource(str, Enum):
    SOLVED = "solved"
    INVERSE_KILLING = "inverse-killing-form"
    GIVEN = "given"


class InvarianceCheck(BaseModel):
    """L_X G = 0 and (for a nondegenerate G) L_X g = 0 for one basis field."""

    model_config = _FROZEN

    label: str
    tensor: Verdict
    metric: Optional[Verdict] = None


class CasimirMetricResult(BaseModel):
    model_config = _FROZEN

    casimir: CasimirElement
    source: CasimirSource = CasimirSource.SOLVED
    tensor: ContraTensor2
    det: sympy.Expr
    det_verdict: Verdict
    metric: Optional[CovTensor2] = None
    symplectic: Optional[TwoForm] = None
    invariance: tuple[InvarianceCheck, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def degenerate(self) -> bool:
        return self.metric is None

    @property
    def all_invariant(self) -> bool:
        return all(c.tensor.holds and (c.metric is None or c.metric.holds) for c in self.invariance)

    @property
    def all_proved(self) -> bool:
        return all(c.tensor.proved and (c.metric is None or c.metric.proved) for c in self.invariance)
