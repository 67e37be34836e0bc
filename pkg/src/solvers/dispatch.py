"""Exact solver registry and automatic dispatch.

Each exact method registers a `SolverEntry` naming the structural class it
applies to. `solve_auto` analyzes the instance once and runs the first entry
whose class contains it, in registration order; the brute-force oracle is the
last resort within its size cap.
"""

# pylint: disable=too-few-public-methods

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List

import structlog

from ..domain.models import ColoredGraph, StructureReport
from ..domain.structure import analyze
from ..schemas.errors import NoExactMethodError, PreconditionError
from .central import solve_p7_forest, solve_p7_tree
from .fpt import solve_p5_forest_fpt
from .models import SolveMethod, SolveOptions, SolveResult
from .oracle import oracle_mrbm
from .star_triangle import solve_star_triangle

logger = logging.getLogger(__name__)
events = structlog.get_logger(__name__)


@dataclass(frozen=True)
class SolverEntry:
    """An exact method and the class of instances it accepts.

    Attributes
    ----------
    name: str
        Selector used on the command line (e.g. ``p7tree``).
    method: SolveMethod
        Tag reported in results.
    applies: Callable
        Predicate over the instance and its `StructureReport`.
    run: Callable
        Solver invocation with the shared `SolveOptions`.
    """

    name: str
    method: SolveMethod
    applies: Callable[[ColoredGraph, StructureReport, SolveOptions], bool]
    run: Callable[[ColoredGraph, SolveOptions], SolveResult]


_registry: Dict[str, SolverEntry] = {}


def register(entry: SolverEntry) -> None:
    """Register an exact method under its selector name."""
    _registry[entry.name] = entry
    logger.debug("Registered solver: '%s' (%s)", entry.name, entry.method.value)


def get(name: str) -> SolverEntry:
    """Retrieve a solver by selector name.

    Raises
    ------
    KeyError
        If no solver is registered under the given name.
    """
    return _registry[name]


def all_solvers() -> Iterable[SolverEntry]:
    """Registered solvers in dispatch order."""
    return _registry.values()


def solver_names() -> List[str]:
    return list(_registry)


register(
    SolverEntry(
        name="p4",
        method=SolveMethod.STAR_TRIANGLE,
        applies=lambda g, r, o: r.p4_subgraph_free,
        run=lambda g, o: solve_star_triangle(g),
    )
)
register(
    SolverEntry(
        name="p5fpt",
        method=SolveMethod.P5_FPT,
        applies=lambda g, r, o: r.is_forest and r.has_no_path(5),
        run=lambda g, o: solve_p5_forest_fpt(g, kernel=o.p5_kernel, threads=o.threads),
    )
)
register(
    SolverEntry(
        name="p7tree",
        method=SolveMethod.P7_TREE,
        applies=lambda g, r, o: r.is_tree and r.has_no_path(7),
        run=lambda g, o: solve_p7_tree(g, threads=o.threads),
    )
)
register(
    SolverEntry(
        name="p7forest",
        method=SolveMethod.P7_FOREST,
        applies=lambda g, r, o: r.is_forest and r.has_no_path(7),
        run=lambda g, o: solve_p7_forest(g, threads=o.threads),
    )
)
register(
    SolverEntry(
        name="brute",
        method=SolveMethod.ORACLE,
        applies=lambda g, r, o: g.edge_count <= o.oracle_cap,
        run=lambda g, o: oracle_mrbm(
            g, cap=o.oracle_cap, allow_oversize=o.allow_oversize
        ),
    )
)


def solve_auto(
    graph: ColoredGraph, options: SolveOptions = SolveOptions()
) -> SolveResult:
    """Solve with the first exact method whose class contains `graph`.

    Raises
    ------
    NoExactMethodError
        If no polynomial method applies and the instance is above the oracle
        cap; the approximation is the suggested fallback.

    Examples
    --------
    >>> solve_auto(parse_instance("p cgraph 2 1\\ne 1 2 a\\n")).method
    <SolveMethod.STAR_TRIANGLE: 'star-triangle'>
    """
    report = analyze(graph)
    for entry in all_solvers():
        if not entry.applies(graph, report, options):
            continue
        events.info(
            "solver.dispatch",
            method=entry.method.value,
            edges=graph.edge_count,
            p_free=report.p_subgraph_free_up_to,
        )
        result = entry.run(graph, options)
        return SolveResult(
            matching=result.matching,
            method=result.method,
            branch_count=result.branch_count,
            pruned_branches=result.pruned_branches,
            certificate_of_optimality=result.certificate_of_optimality,
            dispatched=True,
        )
    raise NoExactMethodError(
        "no exact method applies; use 'approx' for a guaranteed approximation",
        {"edge_count": graph.edge_count, "oracle_cap": options.oracle_cap},
    )


def solve_with(
    name: str, graph: ColoredGraph, options: SolveOptions = SolveOptions()
) -> SolveResult:
    """Run the solver selected by `name` (``auto`` dispatches).

    Raises
    ------
    PreconditionError
        If `name` is unknown or the instance lies outside the method's class.
    """
    if name == "auto":
        return solve_auto(graph, options)
    try:
        entry = get(name)
    except KeyError:
        raise PreconditionError(
            f"unknown method '{name}'", {"known": ["auto", *solver_names()]}
        ) from None
    return entry.run(graph, options)
