"""Loading of config.yaml"""

import copy
import logging
from pathlib import Path
from typing import Dict, Optional, Union

import yaml

from .constants import DEFAULT_CONFIG
from .errors import ConfigError
from .utils import deep_merge

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / 'config.yaml'


def load_config(filepath: Optional[Union[str, Path]] = None) -> Dict:
    """
    Load configuration, merged over the built-in defaults.

    Args:
        filepath: Path to a YAML config; defaults to config.yaml at the project root

    Returns:
        Configuration dictionary
    """
    path = Path(filepath) if filepath is not None else DEFAULT_CONFIG_PATH
    if not path.exists():
        if filepath is not None:
            raise ConfigError(f"config file not found: {path}")
        return copy.deepcopy(DEFAULT_CONFIG)

    try:
        with open(path, 'r', encoding='utf-8') as fh:
            loaded = yaml.safe_load(fh) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e
    if not isinstance(loaded, dict):
        raise ConfigError(f"{path}: top level must be a mapping")

    logger.debug("config loaded from %s", path)
    return deep_merge(copy.deepcopy(DEFAULT_CONFIG), loaded)
