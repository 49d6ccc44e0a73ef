# ringstab/utils/config.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
from pathlib import Path
from typing import Optional

import yaml
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..core.errors import ConfigurationError


def load_yaml_config(config_path: str | Path | None = None) -> dict:
    """Optional YAML overrides; a missing path means no overrides."""
    if not config_path:
        return {}
    target = Path(config_path)
    if not target.exists():
        raise ConfigurationError(f"config file not found: {target}")
    with open(target, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"config file {target} must hold a mapping")
    return data


def _settings_payload(raw_config: dict | None) -> dict:
    """Accept both upper-case field names and lower-case keys, optionally under `ringstab:`."""
    config = raw_config if isinstance(raw_config, dict) else {}
    nested = config.get("ringstab")
    source = nested if isinstance(nested, dict) else config
    return {str(key).upper(): value for key, value in source.items()}


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="RINGSTAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    APP_NAME: str = "ringstab"
    APP_VERSION: str = "0.1.0"
    LOG_LEVEL: str = "WARNING"
    LOG_DIR: Optional[str] = None

    ZERO_TOL_FACTOR: float = 1e-9
    RANK_TOL_FACTOR: float = 1e-8
    RANK_MARGIN: float = 10.0
    SWEEP_TOL: float = 1e-13
    MAX_SWEEPS: int = 50
    HESSIAN_STEP: float = 1e-4
    GRADIENT_STEP: float = 1e-6
    VERIFY_WORKERS: int = 1


def load_settings(config_path: str | Path | None = None) -> Settings:
    return Settings(**_settings_payload(load_yaml_config(config_path)))
