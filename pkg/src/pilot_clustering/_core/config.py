"""Configuration management for the simulator.

This module provides centralized configuration handling using pydantic-settings
for automatic environment variable loading and validation, plus the reader for
flat ``key=value`` experiment files.
"""

from functools import lru_cache
from pathlib import Path

from dotenv import dotenv_values
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

from pilot_clustering._core.exceptions import ConfigurationError
from pilot_clustering._core.log import LOG_LEVELS


class SimulatorSettings(BaseSettings):
    """Ambient runtime settings shared by every command."""

    log_level: str = Field(default="INFO", description="Root log level")
    workers: int = Field(
        default=1, ge=1, description="Worker processes for experiment trials"
    )
    max_rejections: int = Field(
        default=1_000_000,
        ge=1,
        description="Consecutive rejected draws before a cell counts as degenerate",
    )
    utility_cache_size: int = Field(
        default=4096,
        ge=1,
        description="Coalition structures memoised per utility evaluator",
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def _known_level(cls, value: object) -> object:
        if isinstance(value, str):
            value = value.upper()
            if value not in LOG_LEVELS:
                msg = f"log_level must be one of {', '.join(LOG_LEVELS)}"
                raise ValueError(msg)
        return value

    model_config = {
        "env_prefix": "PILOT_",
        "env_file": ".env",
        "extra": "ignore",
    }


@lru_cache
def get_settings() -> SimulatorSettings:
    """Get simulator settings (cached).

    Returns:
        SimulatorSettings instance with values from environment variables.

    Raises:
        ValidationError: If an environment variable holds an invalid value.
    """
    return SimulatorSettings()


def clear_config_cache() -> None:
    """Clear cached settings (useful for testing)."""
    get_settings.cache_clear()


def read_key_value_file(path: str | Path) -> dict[str, str]:
    """Read a flat ``key=value`` file into a dict of lower-cased keys.

    Blank lines and ``#`` comments are ignored. Keys without a value are
    rejected so a typo never silently falls back to a default.

    Raises:
        ConfigurationError: If the file is missing or a key has no value.
    """
    file_path = Path(path)
    if not file_path.is_file():
        msg = f"Config file not found: {file_path}"
        raise ConfigurationError(msg)

    values = dotenv_values(file_path)
    missing = sorted(key for key, value in values.items() if value is None)
    if missing:
        msg = f"Config keys without a value: {', '.join(missing)}"
        raise ConfigurationError(msg)
    return {key.strip().lower(): str(value).strip() for key, value in values.items()}


__all__ = [
    "SimulatorSettings",
    "get_settings",
    "clear_config_cache",
    "read_key_value_file",
]
