"""
System
Run configuration, presets and result files for the command-line front end.
"""

from .config import (
    SCHEMA_VERSION,
    TOOLKIT_VERSION,
    ConfigError,
    RunConfig,
    apply_overrides,
    config_hash,
    get_path,
    list_presets,
    load_config,
    load_preset,
    normalize,
    parse_config,
    set_path,
)
from .io import CsvTable, read_csv, write_csv, write_json

__all__ = [
    "SCHEMA_VERSION",
    "TOOLKIT_VERSION",
    "ConfigError",
    "CsvTable",
    "RunConfig",
    "apply_overrides",
    "config_hash",
    "get_path",
    "list_presets",
    "load_config",
    "load_preset",
    "normalize",
    "parse_config",
    "read_csv",
    "set_path",
    "write_csv",
    "write_json",
]
