# planelie/schemas/catalog.py
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, computed_field

from planelie.core.config import get_settings


class CellStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    THEORY_ONLY = "THEORY-ONLY"


class Column(str, Enum):
    ALGEBRA = "algebra"
    DOMAIN = "domain"
    DISTRIBUTIONS = "distributions"
    KILL = "kill"
    CONF = "conf"


class CellReport(BaseModel):
    column: Column
    status: CellStatus
    expected: str
    found: str
    evidence: List[str] = []
    # erratum notes and caveats (sampled verdicts, non-exact domains)
    notes: List[str] = []


class EntryReport(BaseModel):
    id: str
    params: Dict[str, str] = {}
    # results hold for this instantiation of a parameterised row only
    instance: bool = False
    basis: List[str] = []
    cells: List[CellReport] = []
    errata: List[str] = []
    error: Optional[str] = None

    @computed_field
    @property
    def status(self) -> CellStatus:
        if self.error or any(c.status == CellStatus.FAIL for c in self.cells):
            return CellStatus.FAIL
        return CellStatus.PASS

    def cell(self, column: Column) -> Optional[CellReport]:
        return next((c for c in self.cells if c.column == column), None)

    def label(self) -> str:
        if not self.params:
            return self.id
        return f"{self.id}[{', '.join(f'{k}={v}' for k, v in sorted(self.params.items()))}]"


class TableReport(BaseModel):
    schema_: int = Field(default_factory=lambda: get_settings().schema_version, alias="schema")
    catalog_version: int = Field(default_factory=lambda: get_settings().catalog_version)
    entries: List[EntryReport] = []

    model_config = {"populate_by_name": True}

    def counts(self) -> Dict[str, int]:
        out = {s.value: 0 for s in CellStatus}
        for e in self.entries:
            for c in e.cells:
                out[c.status.value] += 1
            if e.error:
                out[CellStatus.FAIL.value] += 1
        return out

    @computed_field
    @property
    def ok(self) -> bool:
        return self.counts()[CellStatus.FAIL.value] == 0
