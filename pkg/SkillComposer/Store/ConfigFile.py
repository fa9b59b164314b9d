from typing import Any, Dict, Mapping

import yaml

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import ConfigError
from SkillComposer.Kitchen.KitchenObjects import DIMENSIONS, DimensionSpec, EnvConfig

logger = Logger.get_logger(__name__)


def read_config(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a key: value mapping at top level")
    return data


def write_config(path: str, data: Mapping[str, Any]):
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(dict(data), f, sort_keys=False, default_flow_style=None)


def ranges_from_dict(data: Mapping[str, Any]) -> Dict[str, DimensionSpec]:
    unknown = sorted(set(data) - set(DIMENSIONS))
    if unknown:
        raise ConfigError(f"Unknown randomization dimensions: {unknown}")
    try:
        return {name: DimensionSpec.from_dict(name, spec) for name, spec in data.items()}
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"Malformed randomization range: {e}") from e


def load_ranges(path: str) -> Dict[str, DimensionSpec]:
    return ranges_from_dict(read_config(path))


def save_ranges(path: str, ranges: Mapping[str, DimensionSpec]):
    write_config(path, {name: ranges[name].GetValue() for name in DIMENSIONS if name in ranges})


def load_env_config(path: str) -> EnvConfig:
    return EnvConfig.from_dict(read_config(path))


def save_env_config(path: str, config: EnvConfig):
    write_config(path, config.GetValue())
    logger.info(f"Saved environment config (seed {config.seed}) to {path}")
