"""Runtime settings read from the environment."""

from __future__ import annotations

import logging
import os
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from pydantic import Field, field_validator

from .base import BaseSchema

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "QDOMAINS_THREADS"
LOG_LEVEL_ENV = "QDOMAINS_LOG_LEVEL"


class Settings(BaseSchema):
    """Process-wide knobs.

    Parameters
    ----------
    threads : int
        Upper bound on worker threads for embarrassingly parallel assembly
        (intertwining residuals, residue functionals). ``1`` runs inline.
    log_level : str
        Level name used by the command-line entry point.
    """

    _emit_type = False

    threads: int = Field(default=1, ge=1, description="Worker thread cap.")
    log_level: str = Field(default="WARNING", description="Logging level name.")

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(
                f"Unknown log level {value!r}; expected one of "
                "DEBUG, INFO, WARNING, ERROR, CRITICAL."
            )
        return level

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> Settings:
        """Build settings from ``QDOMAINS_THREADS`` and ``QDOMAINS_LOG_LEVEL``."""
        env = os.environ if environ is None else environ
        kwargs: dict = {}
        raw_threads = env.get(THREADS_ENV)
        if raw_threads:
            try:
                kwargs["threads"] = int(raw_threads)
            except ValueError as err:
                raise ValueError(
                    f"{THREADS_ENV} must be a positive integer; got {raw_threads!r}."
                ) from err
        if env.get(LOG_LEVEL_ENV):
            kwargs["log_level"] = env[LOG_LEVEL_ENV]
        return cls(**kwargs)


def get_settings() -> Settings:
    """Current settings (re-read from the environment on every call)."""
    return Settings.from_env()


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> Iterator[R]:
    """Map ``fn`` over ``items`` in input order, threaded up to the settings cap."""
    items = list(items)
    threads = min(get_settings().threads, max(len(items), 1))
    if threads <= 1:
        return map(fn, items)
    logger.debug("Mapping %d items over %d threads", len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return iter(list(pool.map(fn, items)))
