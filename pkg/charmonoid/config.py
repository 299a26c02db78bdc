import logging
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

ENGINE_VERSION = "1.0.0"
SCHEMA_VERSION = 1


class Settings(BaseSettings):
    """
    Runtime configuration. Every field can be set through the environment
    (CHARMONOID_SIZE_CAP=5000) or a local .env file; CLI flags override both.
    """
    model_config = SettingsConfigDict(env_prefix="CHARMONOID_", env_file=".env", extra="ignore")

    size_cap: int = Field(default=10_000, ge=1)
    cache_dir: Path = Path(".charmonoid-cache")
    use_cache: bool = True
    seed: int = 20240601
    jobs: int = Field(default=1, ge=1)
    log_level: str = "WARNING"
    lfun_bound: int = Field(default=3, ge=1)
    theorem3_samples: int = Field(default=100, ge=1)
    split_attempts: int = Field(default=64, ge=1)


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
