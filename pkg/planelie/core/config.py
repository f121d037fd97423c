# planelie/core/config.py
from pathlib import Path

from pydantic import BaseModel, Field

_DATA_DIR = Path(__file__).resolve().parent.parent / "data"


class Settings(BaseModel):
    app_name: str = "planelie"
    # Top-level "schema" field of every JSON report
    schema_version: int = 1
    catalog_version: int = 1
    catalog_path: Path = _DATA_DIR / "catalog.json"

    # Zero testing of transcendental expressions
    zero_test_samples: int = Field(32, ge=4)
    precision_digits: int = Field(50, ge=20)
    # |value| below 10^-zero_tolerance_digits (relative to the sample scale) counts as zero
    zero_tolerance_digits: int = Field(35, ge=10)
    sample_seed: int = 20240601

    # Constant-relation solver fallback (basis independence and friends)
    independence_samples: int = Field(12, ge=4)

    # Rank spot checks of the generic domain
    domain_rank_points: int = Field(10, ge=1)

    # Catalog verification fan-out; 1 keeps everything on the calling thread
    verify_workers: int = Field(1, ge=1)


settings = Settings()


def get_settings() -> Settings:
    return settings


def configure(**overrides) -> Settings:
    """Install a copy of the settings with ``overrides`` applied and return it."""
    global settings
    settings = settings.model_copy(update={k: v for k, v in overrides.items() if v is not None})
    return settings
