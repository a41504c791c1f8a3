"""
Configuration system for the chowcheck toolkit.

Provides typed configuration with YAML file support and environment variable overrides.
"""

from src.config.config_loader import load_config, get_config, reload_config
from src.config.config_schema import (
    NumericsConfig,
    VerificationConfig,
    RankConfig,
    DefaultsConfig,
    LoggingConfig,
    ToolkitConfig
)

__all__ = [
    "load_config",
    "get_config",
    "reload_config",
    "NumericsConfig",
    "VerificationConfig",
    "RankConfig",
    "DefaultsConfig",
    "LoggingConfig",
    "ToolkitConfig",
]
