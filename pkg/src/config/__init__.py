"""Configuration package for the rainbow matching toolkit."""

from .models import (
    EnvSettings,
    KernelMode,
    RunConfig,
    ToolkitConfig,
    resolve_defaults,
)

__all__ = [
    "EnvSettings",
    "KernelMode",
    "RunConfig",
    "ToolkitConfig",
    "resolve_defaults",
]
