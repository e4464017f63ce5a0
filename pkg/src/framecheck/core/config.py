from enum import Enum
from functools import lru_cache
from pathlib import Path

from pydantic import Field, computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict


class AdamsMode(str, Enum):
    """Which Adams relations ``t^j = k·t^{kj}`` enter the computed source."""

    SPANNING = "spanning"
    LISTED = "listed"


class Settings(BaseSettings):
    """Run settings loaded from ``FRAMECHECK_*`` environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="FRAMECHECK_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Paths
    output_dir: Path = Path("framecheck-out")
    cases_dir: Path | None = None

    # Relation generation
    window: int = Field(default=64, ge=1)
    i_max: int = Field(default=16, ge=0)
    adams_mode: AdamsMode = AdamsMode.LISTED

    log_level: str = "INFO"

    @computed_field
    @property
    def certificate_dir(self) -> Path:
        return self.output_dir / "certificates"


@lru_cache
def get_settings() -> Settings:
    """Cached singleton for run settings."""
    return Settings()
