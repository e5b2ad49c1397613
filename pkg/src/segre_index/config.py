import logging
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from segre_index.errors import SchemaError

MAX_THREADS_VAR = "SEGRE_MAX_THREADS"
LOG_LEVEL_VAR = "SEGRE_LOG_LEVEL"

_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


@dataclass(frozen=True)
class Settings:
    """
    Runtime settings read from the environment.

    Args:
        max_threads (int): Upper bound on concurrently evaluated trials or lines.
        log_level (str): Name of the root logging level.
    """

    max_threads: int = 1
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Build settings from ``SEGRE_MAX_THREADS`` and ``SEGRE_LOG_LEVEL``.

        Args:
            environ (Mapping, optional): Defaults to ``os.environ``.

        Raises:
            SchemaError: If a variable is set to an invalid value.
        """
        environ = os.environ if environ is None else environ

        raw_threads = environ.get(MAX_THREADS_VAR, "").strip()
        max_threads = 1
        if raw_threads:
            try:
                max_threads = int(raw_threads)
            except ValueError:
                raise SchemaError(f"{MAX_THREADS_VAR} must be an integer, got {raw_threads!r}")
            if max_threads < 1:
                raise SchemaError(f"{MAX_THREADS_VAR} must be positive, got {max_threads}")

        log_level = environ.get(LOG_LEVEL_VAR, "WARNING").strip().upper() or "WARNING"
        if log_level not in _LEVELS:
            raise SchemaError(
                f"{LOG_LEVEL_VAR} must be one of {', '.join(_LEVELS)}, got {log_level!r}"
            )
        return cls(max_threads=max_threads, log_level=log_level)


def configure_logging(settings: Settings, verbose: bool = False) -> None:
    """Install a stderr handler on the root logger; ``verbose`` forces DEBUG."""
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
