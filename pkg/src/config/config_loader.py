"""
Configuration loader with YAML file support and environment variable overrides.

Sources, later ones winning:
1. Schema defaults
2. config.yaml (project root, or an explicit path)
3. CHOWCHECK_<SECTION>_<FIELD> environment variables
"""

import copy
import os
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from src.config.config_schema import ToolkitConfig

ENV_PREFIX = "CHOWCHECK_"
DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config.yaml"

_config: Optional[ToolkitConfig] = None


def _read_yaml(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ValueError(f"Error loading config file {path}: {e}")
    if not isinstance(data, dict):
        raise ValueError(f"Error loading config file {path}: top level must be a mapping")
    return data


def _env_fields() -> Dict[str, Tuple[str, str, Any]]:
    """Upper-cased SECTION_FIELD suffix -> (section, field, annotation)."""
    fields = {}
    for section, section_info in ToolkitConfig.model_fields.items():
        for name, info in section_info.annotation.model_fields.items():
            fields[f"{section}_{name}".upper()] = (section, name, info.annotation)
    return fields


def _coerce(raw: str, annotation: Any) -> Any:
    """Convert an environment string to the field's type; pydantic validates the rest."""
    if annotation is bool:
        lowered = raw.strip().lower()
        if lowered in ("true", "1", "yes", "on"):
            return True
        if lowered in ("false", "0", "no", "off"):
            return False
        return raw
    if annotation is int:
        try:
            return int(raw)
        except ValueError:
            return raw
    if annotation is float:
        try:
            return float(raw)
        except ValueError:
            return raw
    return raw


def _env_overrides(environ: Optional[Dict[str, str]] = None) -> Dict[str, Dict[str, Any]]:
    """
    Overrides from CHOWCHECK_* variables.

    Field names keep their underscores and match case-insensitively, e.g.
    CHOWCHECK_NUMERICS_MAX_LEVEL=9 or CHOWCHECK_DEFAULTS_N=7.
    Unknown names are ignored.
    """
    environ = os.environ if environ is None else environ
    fields = _env_fields()
    overrides: Dict[str, Dict[str, Any]] = {}
    for key, raw in environ.items():
        if not key.startswith(ENV_PREFIX):
            continue
        target = fields.get(key[len(ENV_PREFIX):].upper())
        if target is None:
            continue
        section, name, annotation = target
        overrides.setdefault(section, {})[name] = _coerce(raw, annotation)
    return overrides


def _layer(base: Dict[str, Any], top: Dict[str, Any]) -> None:
    """Recursively write top into base."""
    for key, value in top.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _layer(base[key], value)
        else:
            base[key] = value


def load_config(config_path: Optional[Path] = None) -> ToolkitConfig:
    """
    Load configuration from file and environment variables.

    Args:
        config_path: Path to a YAML file. Defaults to config.yaml in the
                     project root; a missing file means defaults only.

    Returns:
        The validated ToolkitConfig, also installed as the global config

    Raises:
        ValueError: if the file is unreadable or the merged values fail validation
    """
    global _config

    merged = copy.deepcopy(ToolkitConfig().model_dump())
    _layer(merged, _read_yaml(Path(config_path) if config_path else DEFAULT_CONFIG_PATH))
    _layer(merged, _env_overrides())

    try:
        _config = ToolkitConfig(**merged)
    except Exception as e:
        raise ValueError(f"Invalid configuration: {e}")
    return _config


def get_config() -> ToolkitConfig:
    """Return the global configuration, loading it on first use."""
    if _config is None:
        return load_config()
    return _config


def reload_config(config_path: Optional[Path] = None) -> ToolkitConfig:
    global _config
    _config = None
    return load_config(config_path)
