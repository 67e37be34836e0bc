"""Branching on the central edges of double stars.

In a P5-free forest every P4-containing component is a double star whose two
centers are joined by the only edge with both endpoints of degree at least 2.
Trying every rainbow subset of those ``k`` edges and solving the remaining
star forest is exact, with ``2^k`` branches.

`reduce_p7_to_p6` applies the same subset enumeration to the central edges of
the P6-containing components of a P7-free forest, producing branch instances
that no longer contain a P6.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from ..domain.models import ColoredGraph, RainbowMatching, StructureReport
from ..domain.structure import analyze, central_edge_of
from ..schemas.errors import InvariantViolation, PreconditionError
from .branching import BranchRunner
from .models import Branch, BannedColorSet, SolveMethod, SolveResult
from .star_triangle import StarForestKernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CenterSubset:
    edges: Tuple[int, ...]
    colors: frozenset
    removed: Tuple[int, ...]


def rainbow_subsets(
    graph: ColoredGraph, edge_ids: Iterable[int], largest_first: bool = True
) -> Iterator[Tuple[int, ...]]:
    """Subsets of pairwise vertex-disjoint edges with distinct colors.

    Subsets come by size (descending when ``largest_first``) and, within a
    size, in lexicographic order.
    """
    ids = sorted(edge_ids)
    sizes = range(len(ids), -1, -1) if largest_first else range(len(ids) + 1)
    for size in sizes:
        for subset in combinations(ids, size):
            colors = {graph.color(e) for e in subset}
            ends = {v for e in subset for v in graph.endpoints(e)}
            if len(colors) == size and len(ends) == 2 * size:
                yield subset


def double_star_centers(graph: ColoredGraph) -> Tuple[int, ...]:
    """Edges whose endpoints both have degree at least 2."""
    return tuple(
        e
        for e, (u, v, _) in enumerate(graph.edges)
        if graph.degree(u) >= 2 and graph.degree(v) >= 2
    )


def kernel_edges(graph: ColoredGraph, star_edges: Iterable[int]) -> Tuple[int, ...]:
    """Prune every star to one edge per color and at most ``s`` edges.

    ``s`` is the number of stars. A maximum matching uses at most ``s - 1``
    colors outside any one star, so one of the ``s`` kept colors is always
    free to replace a dropped edge. In a forest whose components all contain
    a P4 the stars come two per double star and ``s = 2k``.
    """
    kernel = StarForestKernel(graph, star_edges)
    cap = sum(1 for eids in kernel.component_edges if eids)
    kept: List[int] = []
    for eids in kernel.component_edges:
        first: Dict[int, int] = {}
        for e in eids:
            first.setdefault(graph.color(e), e)
        kept.extend(sorted(first.values())[:cap])
    return tuple(sorted(kept))


def _require_p5_free_forest(report: StructureReport) -> None:
    if not report.is_forest:
        raise PreconditionError("instance is not a forest")
    if not report.has_no_path(5):
        raise PreconditionError(
            "instance contains a P5",
            {"p_subgraph_free_up_to": report.p_subgraph_free_up_to},
        )


def kernel_default(report: StructureReport) -> bool:
    """The star kernel is on by default when every component contains a P4."""
    nontrivial = report.nontrivial_components()
    return bool(nontrivial) and all(c.path_vertex_count >= 4 for c in nontrivial)


def solve_p5_forest_fpt(
    graph: ColoredGraph,
    banned: Optional[BannedColorSet | Iterable[int]] = None,
    kernel: Optional[bool] = None,
    threads: int = 1,
) -> SolveResult:
    """Maximum rainbow matching of a P5-free forest in ``O(2^k poly)`` time.

    Parameters
    ----------
    graph : ColoredGraph
        P5-free forest.
    banned : BannedColorSet or iterable of int, optional
        Colors that may not be used.
    kernel : bool, optional
        Prune stars before branching; None decides from the instance.
    threads : int
        Worker threads for branch evaluation.

    Raises
    ------
    PreconditionError
        If the instance is not a forest or contains a P5.
    InvariantViolation
        If the number of double-star center edges differs from the number of
        P4-containing components.
    """
    ban = BannedColorSet.coerce(graph, banned)
    report = analyze(graph)
    _require_p5_free_forest(report)
    centers = double_star_centers(graph)
    k = report.p4_component_count
    if len(centers) != k:
        raise InvariantViolation(
            "center edge count differs from P4 component count",
            {"centers": len(centers), "k": k},
        )
    center_set = set(centers)
    stars = [
        e
        for e in range(graph.edge_count)
        if e not in center_set and graph.color(e) not in ban
    ]
    use_kernel = kernel_default(report) if kernel is None else kernel
    if use_kernel:
        stars = list(kernel_edges(graph, stars))
    residual = StarForestKernel(graph, stars, ban)

    usable = [e for e in centers if graph.color(e) not in ban]
    subsets = (
        CenterSubset(
            edges=subset,
            colors=frozenset(graph.color(e) for e in subset),
            removed=tuple(v for e in subset for v in graph.endpoints(e)),
        )
        for subset in rainbow_subsets(graph, usable)
    )

    def evaluate(choice: CenterSubset, floor: int) -> Optional[Tuple[int, ...]]:
        rest = residual.solve(
            choice.removed, choice.colors, at_least=floor - len(choice.edges)
        )
        if rest is None:
            return None
        return tuple(sorted(choice.edges + rest))

    base = residual.base_size
    runner: BranchRunner = BranchRunner(threads=threads)
    outcome = runner.run(
        subsets,
        bound=lambda c: len(c.edges) + base,
        evaluate=evaluate,
    )
    logger.debug(
        "fpt.solved k=%d kernel=%s star_edges=%d branches=%d",
        k,
        use_kernel,
        len(stars),
        outcome.evaluated,
    )
    return SolveResult(
        matching=RainbowMatching.checked(graph, outcome.best),
        method=SolveMethod.P5_FPT,
        branch_count=outcome.evaluated,
        pruned_branches=outcome.pruned,
    )


def reduce_p7_to_p6(graph: ColoredGraph) -> List[Branch]:
    """Branch on the central edges of P6-containing components.

    Each branch deletes the central edges it does not choose, deletes the
    chosen ones together with every edge meeting their endpoints, and bans
    the chosen colors. The maximum of ``len(fixed)`` plus the branch optimum
    over all branches equals the optimum of `graph`.

    Raises
    ------
    PreconditionError
        If the instance is not a P7-free forest.
    InvariantViolation
        If a branch instance still contains a P6 or has more than ``2k``
        P4-containing components.
    """
    report = analyze(graph)
    if not report.is_forest or not report.has_no_path(7):
        raise PreconditionError("instance is not a P7-free forest")
    nxg = graph.to_networkx()
    centers = [
        central_edge_of(graph, nxg, comp.vertices).edge_id
        for comp in report.components
        if comp.path_vertex_count >= 6
    ]
    k = report.p4_component_count
    center_set = set(centers)
    branches: List[Branch] = []
    for subset in rainbow_subsets(graph, centers, largest_first=False):
        ends = {v for e in subset for v in graph.endpoints(e)}
        active = frozenset(
            e
            for e, (u, v, _) in enumerate(graph.edges)
            if e not in center_set and u not in ends and v not in ends
        )
        branch = Branch(
            active_edges=active,
            banned=BannedColorSet(frozenset(graph.color(e) for e in subset)),
            fixed=subset,
        )
        sub, _ = branch.materialize(graph)
        sub_report = analyze(sub)
        if not sub_report.has_no_path(6) or sub_report.p4_component_count > 2 * k:
            raise InvariantViolation(
                "branch instance still contains a P6",
                {"fixed": list(subset), "up_to": sub_report.p_subgraph_free_up_to},
            )
        branches.append(branch)
    logger.debug("reduce.p7_to_p6 centers=%d branches=%d", len(centers), len(branches))
    return branches
