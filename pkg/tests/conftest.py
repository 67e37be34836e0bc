"""Pytest configuration for test suite.

Ensures the project root is on ``sys.path`` so imports like ``import src``
resolve correctly regardless of the working directory pytest chooses, and
provides small instances shared by several test modules.
"""

from __future__ import annotations

import logging
import random
import sys
from pathlib import Path

import pytest


def _ensure_project_root_on_syspath() -> None:
    project_root = Path(__file__).resolve().parents[1]
    project_root_str = str(project_root)
    if project_root_str not in sys.path:
        # Prepend to prefer local sources over site-packages
        sys.path.insert(0, project_root_str)


_ensure_project_root_on_syspath()

import structlog  # noqa: E402

from src.domain.instance_io import parse_instance  # noqa: E402
from src.gadgets.catalog import named_source  # noqa: E402


@pytest.fixture(autouse=True)
def reset_logging():
    """Undo CLI logging setup so no test writes to a closed capture stream."""
    yield
    structlog.reset_defaults()
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)
    root.setLevel(logging.WARNING)


def path_text(colors: str) -> str:
    """Instance text of a path whose i-th edge has the i-th character as color."""
    lines = [f"p cgraph {len(colors) + 1} {len(colors)}"]
    lines += [f"e {i} {i + 1} {c}" for i, c in enumerate(colors, start=1)]
    return "\n".join(lines) + "\n"


@pytest.fixture
def colored_path():
    """Factory: `colored_path("12121")` parses a path colored edge by edge."""
    return lambda colors: parse_instance(path_text(colors))


@pytest.fixture
def p6_alternating():
    """Path on six vertices colored 1 2 1 2 1; optimum 2."""
    return parse_instance(path_text("12121"))


@pytest.fixture
def c6_three_colors():
    """Six-cycle colored 1 2 3 1 2 3; optimum 3."""
    text = "p cgraph 6 6\n" + "".join(
        f"e {i} {i % 6 + 1} {c}\n" for i, c in enumerate("123123", start=1)
    )
    return parse_instance(text)


@pytest.fixture
def k33():
    return named_source("k33")


@pytest.fixture
def rng():
    return random.Random(20240611)
