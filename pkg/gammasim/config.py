"""Runtime defaults, overridable from the environment."""

import os
from dataclasses import dataclass, fields
from typing import Mapping, Optional

from gammasim.errors import ConfigError


@dataclass(frozen=True)
class Settings:
    """Defaults used by the engine, harness, codes and classifier.

    Every field can be overridden by an environment variable named
    ``GAMMASIM_<FIELD>`` (for instance ``GAMMASIM_FUEL=5000``).
    """

    fuel: int = 100_000
    block_steps: int = 20_000
    max_limits: int = 4096
    horizon: str = "w^2"
    code_width: int = 4
    code_rank: int = 3
    corpus_seed: int = 0
    corpus_depth: int = 3
    corpus_size: int = 2000
    lasso_window: int = 64
    appearance_steps: int = 256

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """Build settings from ``GAMMASIM_*`` variables.

        Args:
            environ: Mapping to read from, defaults to ``os.environ``

        Returns:
            Settings with every recognised variable applied

        Raises:
            ConfigError: if an integer field gets a non-integer value
        """
        environ = os.environ if environ is None else environ
        values = {}
        for field in fields(cls):
            raw = environ.get(f"GAMMASIM_{field.name.upper()}")
            if raw is None:
                continue
            if field.type in (str, "str"):
                values[field.name] = raw
                continue
            try:
                values[field.name] = int(raw)
            except ValueError:
                raise ConfigError(f"GAMMASIM_{field.name.upper()} must be an integer, got {raw!r}") from None
        return cls(**values)


DEFAULT_SETTINGS = Settings()
