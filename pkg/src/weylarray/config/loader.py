"""Configuration loader for weylarray runs.

Loads a JSON run document and returns a validated RunConfig instance.
Uses module-level caching so each document is only parsed once per process.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from weylarray.config.models import RunConfig
from weylarray.domain.errors import ConfigurationError

# Module-level cache
_config_cache: dict[str, RunConfig] = {}

# Built-in recipes live next to this module
PRESETS_DIR = Path(__file__).parent / "presets"
_DEFAULT_CONFIG_PATH = PRESETS_DIR / "bcc_weyl.json"


def list_presets() -> list[str]:
    """Names of the built-in recipes (file stems)."""
    return sorted(p.stem for p in PRESETS_DIR.glob("*.json"))


def preset_path(name: str) -> Path:
    path = PRESETS_DIR / f"{name}.json"
    if not path.exists():
        raise ConfigurationError(
            f"Unknown preset '{name}' (available: {', '.join(list_presets())})"
        )
    return path


def load_config(path: Optional[Path] = None) -> RunConfig:
    """Load and validate a run configuration from a JSON file.

    Parameters
    ----------
    path : Path | None
        Path to a JSON run document.
        If ``None``, the built-in ``bcc_weyl.json`` preset is used.

    Returns
    -------
    RunConfig
        Validated configuration instance.

    Raises
    ------
    FileNotFoundError
        If the specified path does not exist.
    ConfigurationError
        If the file is not valid JSON.
    pydantic.ValidationError
        If the JSON content does not match the schema.
    """
    config_path = path or _DEFAULT_CONFIG_PATH
    cache_key = str(config_path.resolve())

    if cache_key in _config_cache:
        return _config_cache[cache_key]

    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    try:
        raw = json.loads(config_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{config_path} is not valid JSON: {exc}") from exc
    config = RunConfig.model_validate(raw)
    _config_cache[cache_key] = config
    return config


def get_config() -> RunConfig:
    """Get the default run configuration (cached)."""
    return load_config()


def clear_cache() -> None:
    """Clear the config cache: useful for testing."""
    _config_cache.clear()
