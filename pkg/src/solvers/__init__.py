"""Exact maximum rainbow matching solvers."""

from .central import solve_p7_forest, solve_p7_tree
from .dispatch import solve_auto, solve_with
from .fpt import reduce_p7_to_p6, solve_p5_forest_fpt
from .models import Branch, BannedColorSet, SolveMethod, SolveOptions, SolveResult
from .oracle import oracle_mis, oracle_mrbm
from .star_triangle import solve_star_triangle

__all__ = [
    "Branch",
    "BannedColorSet",
    "SolveMethod",
    "SolveOptions",
    "SolveResult",
    "oracle_mis",
    "oracle_mrbm",
    "reduce_p7_to_p6",
    "solve_auto",
    "solve_p5_forest_fpt",
    "solve_p7_forest",
    "solve_p7_tree",
    "solve_star_triangle",
    "solve_with",
]
