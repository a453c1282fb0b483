"""Application configuration using pydantic-settings."""

from functools import lru_cache
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Lab settings loaded from KGSCATTER_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="KGSCATTER_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    # Sweep parallelism
    threads: int = Field(default=1, ge=1)

    # FFT worker threads per transform
    fft_workers: int = Field(default=1, ge=1)

    # Output
    output_dir: str = "./results"

    # Logging
    log_level: str = "INFO"
    log_json: bool = False


@lru_cache
def get_settings() -> Settings:
    """Return cached settings instance."""
    return Settings()
