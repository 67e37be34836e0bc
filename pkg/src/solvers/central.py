"""Exact solvers for P7-free trees and forests by central-edge branching.

Every P4-containing component of a P7-free forest has a central edge ``xy``
such that each vertex lies within distance 2 of ``x`` or ``y``. Deleting
``x`` and ``y`` therefore leaves a star forest. A matching meets the edges
at ``x`` and ``y`` in one of three ways: not at all, in a single edge, or in
one edge at ``x`` plus one at ``y``. Enumerating those choices (per
component, combined across components) and solving each residual star forest
with the warm-started component/color matching gives the optimum.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from ..domain.models import ColoredGraph, RainbowMatching, StructureReport
from ..domain.structure import CentralEdge, analyze, central_edge_of
from ..schemas.errors import InvariantViolation, PreconditionError
from .branching import BranchRunner
from .models import BannedColorSet, SolveMethod, SolveResult
from .star_triangle import StarForestKernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeChoice:
    """Edges taken at one central edge, plus the residual vertices they kill."""

    edges: Tuple[int, ...]
    colors: Tuple[int, ...]
    removed: Tuple[int, ...]


@dataclass(frozen=True)
class CombinedChoice:
    edges: Tuple[int, ...]
    colors: frozenset
    removed: Tuple[int, ...]


def _require_p7_free_forest(report: StructureReport, *, tree: bool) -> None:
    if tree and not report.is_tree:
        raise PreconditionError("instance is not a tree")
    if not report.is_forest:
        raise PreconditionError("instance is not a forest")
    if not report.has_no_path(7):
        raise PreconditionError(
            "instance contains a P7",
            {"p_subgraph_free_up_to": report.p_subgraph_free_up_to},
        )


def central_choices(
    graph: ColoredGraph, central: CentralEdge, banned: BannedColorSet
) -> List[EdgeChoice]:
    """All ways a rainbow matching can meet the edges at ``x`` and ``y``.

    Ordered largest first: pairs, then single edges, then the empty choice.
    """
    x, y, xy = central.x, central.y, central.edge_id

    def usable(v: int) -> List[int]:
        return [e for e in graph.incidence[v] if graph.color(e) not in banned]

    at_x = [e for e in usable(x) if e != xy]
    at_y = [e for e in usable(y) if e != xy]
    pairs: List[EdgeChoice] = []
    for ex in at_x:
        for ey in at_y:
            cx, cy = graph.color(ex), graph.color(ey)
            if cx == cy:
                continue
            pairs.append(
                EdgeChoice(
                    edges=tuple(sorted((ex, ey))),
                    colors=(cx, cy),
                    removed=(graph.other_end(ex, x), graph.other_end(ey, y)),
                )
            )
    singles: List[EdgeChoice] = []
    for e in sorted(set(usable(x)) | set(usable(y))):
        if e == xy:
            removed: Tuple[int, ...] = ()
        else:
            removed = (graph.other_end(e, x if e in graph.incidence[x] else y),)
        singles.append(
            EdgeChoice(edges=(e,), colors=(graph.color(e),), removed=removed)
        )
    pairs.sort(key=lambda c: c.edges)
    return pairs + singles + [EdgeChoice(edges=(), colors=(), removed=())]


class _CentralPlan:
    """Central edges, per-component choices and the residual kernel."""

    def __init__(
        self, graph: ColoredGraph, banned: BannedColorSet, report: StructureReport
    ):
        self.graph = graph
        self.banned = banned
        nxg = graph.to_networkx()
        self.report = report
        self.centrals: List[CentralEdge] = [
            central_edge_of(graph, nxg, comp.vertices)
            for comp in self.report.components
            if comp.path_vertex_count >= 4
        ]
        hubs = {v for c in self.centrals for v in (c.x, c.y)}
        residual = [
            e
            for e, (u, v, _) in enumerate(graph.edges)
            if u not in hubs and v not in hubs
        ]
        try:
            self.kernel = StarForestKernel(graph, residual, banned)
        except PreconditionError as exc:
            raise InvariantViolation(
                "residual of a P7-free forest is not a star forest", exc.details
            ) from exc
        self.choices = [central_choices(graph, c, banned) for c in self.centrals]

    def combinations(self, runner: BranchRunner) -> Iterator[CombinedChoice]:
        """Rainbow-compatible products of per-component choices.

        Subtrees whose optimistic size is below the incumbent size are
        skipped and counted as pruned.
        """
        base = self.kernel.base_size
        depth = len(self.choices)

        def grow(
            i: int, edges: Tuple[int, ...], colors: frozenset, removed: Tuple[int, ...]
        ) -> Iterator[CombinedChoice]:
            if i == depth:
                yield CombinedChoice(tuple(sorted(edges)), colors, removed)
                return
            if len(edges) + 2 * (depth - i) + base < runner.incumbent_size:
                runner.outcome.pruned += 1
                return
            for choice in self.choices[i]:
                if colors.intersection(choice.colors):
                    continue
                yield from grow(
                    i + 1,
                    edges + choice.edges,
                    colors.union(choice.colors),
                    removed + choice.removed,
                )

        yield from grow(0, (), frozenset(), ())

    def evaluate(
        self, choice: CombinedChoice, floor: int
    ) -> Optional[Tuple[int, ...]]:
        rest = self.kernel.solve(
            choice.removed, choice.colors, at_least=floor - len(choice.edges)
        )
        if rest is None:
            return None
        return tuple(sorted(choice.edges + rest))


def _solve_central(
    graph: ColoredGraph,
    banned: Optional[BannedColorSet | Iterable[int]],
    threads: int,
    method: SolveMethod,
    tree: bool,
) -> SolveResult:
    ban = BannedColorSet.coerce(graph, banned)
    report = analyze(graph)
    _require_p7_free_forest(report, tree=tree)
    plan = _CentralPlan(graph, ban, report)
    if not plan.centrals:
        ids = plan.kernel.solve()
        return SolveResult(
            matching=RainbowMatching.checked(graph, ids), method=method, branch_count=1
        )
    runner: BranchRunner = BranchRunner(threads=threads)
    base = plan.kernel.base_size
    outcome = runner.run(
        plan.combinations(runner),
        bound=lambda c: len(c.edges) + base,
        evaluate=plan.evaluate,
    )
    logger.debug(
        "central.solved components=%d residual_opt=%d branches=%d pruned=%d",
        len(plan.centrals),
        base,
        outcome.evaluated,
        outcome.pruned,
    )
    return SolveResult(
        matching=RainbowMatching.checked(graph, outcome.best),
        method=method,
        branch_count=outcome.evaluated,
        pruned_branches=outcome.pruned,
    )


def solve_p7_tree(
    graph: ColoredGraph,
    banned: Optional[BannedColorSet | Iterable[int]] = None,
    threads: int = 1,
) -> SolveResult:
    """Maximum rainbow matching of a P7-free tree.

    A tree with no P4 is a star and goes straight to the star solver.

    Raises
    ------
    PreconditionError
        If the instance is not a tree or contains a P7.

    Examples
    --------
    >>> text = "p cgraph 6 5\\n" + "".join(
    ...     f"e {i} {i + 1} {c}\\n" for i, c in enumerate("12121", start=1)
    ... )
    >>> solve_p7_tree(parse_instance(text)).size
    2
    """
    return _solve_central(graph, banned, threads, SolveMethod.P7_TREE, tree=True)


def solve_p7_forest(
    graph: ColoredGraph,
    banned: Optional[BannedColorSet | Iterable[int]] = None,
    threads: int = 1,
) -> SolveResult:
    """Maximum rainbow matching of a P7-free forest.

    Choices at the central edges of all P4-containing components are combined
    as a product, skipping combinations whose edges repeat a color.

    Raises
    ------
    PreconditionError
        If the instance is not a forest or contains a P7.
    """
    return _solve_central(graph, banned, threads, SolveMethod.P7_FOREST, tree=False)


def central_edges(graph: ColoredGraph) -> Sequence[CentralEdge]:
    """Central edges of every P4-containing component, by lowest vertex."""
    nxg = graph.to_networkx()
    return [
        central_edge_of(graph, nxg, comp.vertices)
        for comp in analyze(graph).components
        if comp.path_vertex_count >= 4
    ]
