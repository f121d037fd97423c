# planelie/schemas/report.py
from typing import Any, Dict, List

from pydantic import BaseModel, Field

from planelie.core.config import get_settings


class CommandReport(BaseModel):
    """Envelope of every non-catalog command: inputs echoed as canonical grammar strings, results as plain JSON."""

    model_config = {"populate_by_name": True}

    schema_: int = Field(default_factory=lambda: get_settings().schema_version, alias="schema")
    command: str
    inputs: Dict[str, Any] = {}
    results: Dict[str, Any] = {}
    notes: List[str] = []
