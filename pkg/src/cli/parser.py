"""Flat key = value scenario files."""

from typing import Dict, Iterable, Optional, Tuple

import structlog
from pydantic import ValidationError

from src.exceptions import ConfigError

from .models import ScenarioConfig

logger = structlog.get_logger(__name__)


def _split_assignment(raw: str, line: Optional[int]) -> Tuple[str, str]:
    if "=" not in raw:
        raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=line)
    key, value = raw.split("=", 1)
    key, value = key.strip(), value.strip()
    if not key:
        raise ConfigError("missing key before '='", line=line)
    if not value:
        raise ConfigError("missing value after '='", line=line, field=key)
    return key, value


def read_assignments(text: str) -> Tuple[Dict[str, str], Dict[str, int]]:
    """Key -> raw value and key -> 1-based line; '#' starts a comment."""
    values: Dict[str, str] = {}
    lines: Dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        key, value = _split_assignment(body, number)
        if key in values:
            raise ConfigError(f"duplicate key (first set on line {lines[key]})", line=number, field=key)
        values[key] = value
        lines[key] = number
    return values, lines


def parse_config(
    text: str,
    overrides: Iterable[str] = (),
    experiment: Optional[str] = None,
) -> ScenarioConfig:
    """
    Parse and validate a scenario.

    Overrides ("key=value") replace file values; experiment, when given,
    replaces the file's experiment key. Errors carry the offending line
    (when the key came from the file) and field name.
    """
    values, lines = read_assignments(text)
    for item in overrides:
        key, value = _split_assignment(item, None)
        values[key] = value
        lines.pop(key, None)
    if experiment is not None:
        values["experiment"] = experiment
        lines.pop("experiment", None)

    try:
        config = ScenarioConfig(**values)
    except ValidationError as e:
        err = e.errors()[0]
        field = str(err["loc"][0]) if err["loc"] else None
        message = "unknown key" if err["type"] == "extra_forbidden" else err["msg"]
        raise ConfigError(message, line=lines.get(field), field=field) from e

    logger.debug("scenario_parsed", experiment=config.experiment.value, keys=sorted(values))
    return config
