"""Default bounds and environment overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import ConfigError

DEFAULT_MAX_DEPTH = 64
DEFAULT_MAX_STATES = 200_000
DEFAULT_SERIES_ORDER = 16
DEFAULT_MAX_BLOWUPS = 9

ENV_MAX_DEPTH = "GIZCTL_MAX_DEPTH"
ENV_SERIES_ORDER = "GIZCTL_SERIES_ORDER"
ENV_MAX_BLOWUPS = "GIZCTL_MAX_BLOWUPS"


def _positive_int(environ: Mapping[str, str], name: str, default: int) -> int:
    raw = environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Settings:
    max_depth: int = DEFAULT_MAX_DEPTH
    max_states: int = DEFAULT_MAX_STATES
    series_order: int = DEFAULT_SERIES_ORDER
    max_blowups: int = DEFAULT_MAX_BLOWUPS

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """Read overrides from ``GIZCTL_*`` variables.

        >>> Settings.from_env({"GIZCTL_MAX_DEPTH": "8"}).max_depth
        8
        """
        env = os.environ if environ is None else environ
        return cls(
            max_depth=_positive_int(env, ENV_MAX_DEPTH, DEFAULT_MAX_DEPTH),
            series_order=_positive_int(env, ENV_SERIES_ORDER, DEFAULT_SERIES_ORDER),
            max_blowups=_positive_int(env, ENV_MAX_BLOWUPS, DEFAULT_MAX_BLOWUPS),
        )
