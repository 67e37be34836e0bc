"""Observability utilities: logging setup.

This module configures standard logging for library modules and `structlog`
for the structured events emitted by solvers (``solver.dispatch``,
``oracle.cap_override``, ``local_search.pass``, ``certificate.verified``).
Both write to stderr so that reports on stdout stay byte-deterministic.
"""

from __future__ import annotations

import logging
import sys
from typing import Optional

import structlog

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def resolve_level(
    explicit: Optional[str], verbose: int = 0, env_level: Optional[str] = None
) -> str:
    """Pick the effective level: explicit flag, then ``-v`` count, then env.

    Examples
    --------
    >>> resolve_level(None, verbose=1)
    'DEBUG'
    >>> resolve_level("warning", verbose=1)
    'WARNING'
    """
    if explicit:
        return explicit.upper()
    if verbose:
        return "DEBUG"
    if env_level:
        return env_level.upper()
    return "INFO"


def setup_logging(level: str = "INFO") -> None:
    """Configure application logging.

    Parameters
    ----------
    level: str
        Logging level name (e.g., "DEBUG", "INFO"). Defaults to "INFO".

    Behavior
    --------
    - Initializes Python's logging on stderr with the requested level.
    - Configures `structlog` with a filtering bound logger rendering
      ``key=value`` lines on stderr.
    """
    numeric_level = getattr(logging, level.upper(), logging.INFO)
    logging.basicConfig(
        level=numeric_level,
        format=("%(asctime)s %(levelname)s %(name)s - %(message)s"),
        datefmt="%Y-%m-%dT%H:%M:%S",
        stream=sys.stderr,
        force=True,
    )
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="%Y-%m-%dT%H:%M:%S"),
            structlog.processors.KeyValueRenderer(
                key_order=["timestamp", "level", "event"]
            ),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
