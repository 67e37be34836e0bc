"""
Tests for logging setup and level resolution.
"""

import logging

import pytest
import structlog

from src.observability import resolve_level, setup_logging


@pytest.mark.parametrize(
    "explicit, verbose, env, expected",
    [
        (None, 0, None, "INFO"),
        (None, 0, "debug", "DEBUG"),
        (None, 1, "error", "DEBUG"),
        ("warning", 2, "debug", "WARNING"),
    ],
)
def test_resolve_level(explicit, verbose, env, expected):
    assert resolve_level(explicit, verbose, env) == expected


def test_setup_logging_sets_root_level():
    setup_logging("DEBUG")
    assert logging.getLogger().level == logging.DEBUG
    setup_logging("nonsense")
    assert logging.getLogger().level == logging.INFO


def test_structured_events_are_filtered(capsys):
    setup_logging("WARNING")
    log = structlog.get_logger("test")
    log.info("quiet.event", size=1)
    log.warning("loud.event", size=2)
    err = capsys.readouterr().err
    assert "quiet.event" not in err
    assert "event='loud.event'" in err
    assert "level='warning'" in err
    assert "size=2" in err
