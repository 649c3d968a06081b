"""Settings: defaults from DEFAULT_SETTINGS, overridden by a JSON file and keyword arguments."""

import json
import logging
from typing import Optional

from marshmallow import ValidationError

from lexman.constants import DEFAULT_SETTINGS
from lexman.exceptions import ConfigError
from lexman.models import SettingsSchema

logger = logging.getLogger(__name__)


def load_settings(path: Optional[str] = None, **overrides) -> dict:
    """Merge and validate settings.

    Args:
        path: optional JSON file holding a settings object
        **overrides: individual settings taking precedence over the file

    Returns:
        A complete settings dictionary.

    Raises:
        ConfigError: the file is unreadable or a setting is invalid

    """
    raw = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as handle:
                loaded = json.load(handle)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"Cannot read settings from {path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError(f"Settings file {path} must hold a JSON object")
        raw.update(loaded)
    raw.update(overrides)
    try:
        settings = SettingsSchema().load(raw)
    except ValidationError as exc:
        raise ConfigError(f"Invalid settings: {exc.messages}") from exc
    changed = {key: value for key, value in settings.items() if DEFAULT_SETTINGS.get(key) != value}
    if changed:
        logger.debug(f"Settings differing from the defaults: {changed}")
    return settings
