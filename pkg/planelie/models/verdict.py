# planelie/models/verdict.py
from enum import Enum
from typing import Iterable, Optional

import sympy
from pydantic import BaseModel, ConfigDict


class Certainty(str, Enum):
    PROVED = "proved"
    SAMPLED = "sampled"


class Verdict(BaseModel):
    """A certainty-tagged boolean. ``samples`` counts the evaluation points behind a sampled verdict."""

    model_config = ConfigDict(frozen=True)

    holds: bool
    certainty: Certainty = Certainty.PROVED
    samples: int = 0

    def __bool__(self) -> bool:
        return self.holds

    @property
    def proved(self) -> bool:
        return self.certainty == Certainty.PROVED

    def tag(self, yes: str = "true", no: str = "false") -> str:
        return f"{self.certainty.value}-{yes if self.holds else no}"

    @property
    def zero_tag(self) -> str:
        return self.tag("zero", "nonzero")

    def negated(self) -> "Verdict":
        return Verdict(holds=not self.holds, certainty=self.certainty, samples=self.samples)

    @classmethod
    def proved_true(cls) -> "Verdict":
        return cls(holds=True)

    @classmethod
    def proved_false(cls) -> "Verdict":
        return cls(holds=False)

    @classmethod
    def all_of(cls, verdicts: Iterable["Verdict"]) -> "Verdict":
        """Conjunction: a proved failure wins, otherwise the weakest certainty is kept."""
        verdicts = list(verdicts)
        failures = [v for v in verdicts if not v.holds]
        if failures:
            proved = [v for v in failures if v.proved]
            return (proved or failures)[0]
        if any(not v.proved for v in verdicts):
            return cls(holds=True, certainty=Certainty.SAMPLED, samples=max(v.samples for v in verdicts))
        return cls.proved_true()

    @classmethod
    def any_of(cls, verdicts: Iterable["Verdict"]) -> "Verdict":
        return cls.all_of(v.negated() for v in verdicts).negated()


class Evaluation(BaseModel):
    """Value of an expression at a point: an exact rational, or a real rounded to ``digits``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: sympy.Expr
    exact: bool
    digits: Optional[int] = None

    def __str__(self) -> str:
        return str(self.value)
