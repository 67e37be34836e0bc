"""Local-search approximation for maximum rainbow matching."""

from .local_search import (
    ApproxResult,
    LocalSearchConfig,
    approx_mrbm,
    greedy_maximal_is,
    local_search_mis,
)

__all__ = [
    "ApproxResult",
    "LocalSearchConfig",
    "approx_mrbm",
    "greedy_maximal_is",
    "local_search_mis",
]
