from pathlib import Path
from typing import Any, Dict, Optional, Union

import toml
from pydantic import ValidationError

from nightday.backend.data_layer.models.run_config import RunConfig
from nightday.system.exceptions import InvalidSpecError
from nightday.system.path_getters import get_run_tomls_folder_path
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()

SAMPLE_RUN_CONFIG_NAME = "_sample_run_config.toml"


def get_sample_run_config_path() -> str:
    return str(Path(get_run_tomls_folder_path()) / SAMPLE_RUN_CONFIG_NAME)


def load_toml_settings(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise InvalidSpecError(f"Config file {path} not found")
    try:
        return toml.load(path)
    except toml.TomlDecodeError as e:
        raise InvalidSpecError(f"Config file {path} is not valid TOML: {e}") from e


def merge_settings(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Nested merge, `overrides` wins; None values in `overrides` mean 'not given'."""
    merged = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_settings(merged[key], value)
        elif isinstance(value, dict):
            merged[key] = merge_settings({}, value)
        else:
            merged[key] = value
    return merged


def build_run_config(overrides: Dict[str, Any],
                     config_path: Optional[Union[str, Path]] = None,
                     seed: Optional[int] = None) -> RunConfig:
    """Defaults < TOML file < command-line overrides. `seed` goes wherever randomness is used."""
    settings: Dict[str, Any] = {}
    if config_path is not None:
        settings = load_toml_settings(config_path)
        logger.debug(f"Loaded settings from {config_path}: {settings}")
        if overrides.get("command") not in ("analyze", "batch") and "bootstrap" in settings:
            logger.debug(f"Ignoring the [bootstrap] section of {config_path} for `{overrides.get('command')}`")
            settings.pop("bootstrap")
    settings = merge_settings(settings, overrides)
    # empty nested sections produced by absent flags stay unset
    settings = {key: value for key, value in settings.items() if value != {}}
    if seed is not None:
        if settings.get("command") == "synth" and isinstance(settings.get("synth"), dict):
            settings["synth"]["seed"] = seed
        elif isinstance(settings.get("bootstrap"), dict):
            settings["bootstrap"]["seed"] = seed
    try:
        return RunConfig(**settings)
    except ValidationError as e:
        raise InvalidSpecError(f"Invalid configuration: {e}".replace("\n", "; ")) from e
