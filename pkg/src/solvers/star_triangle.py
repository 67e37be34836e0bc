"""Exact solver for graphs whose components are stars or triangles.

In such a graph every matching takes at most one edge per component, so a
rainbow matching is a choice of distinct colors, one per component. That is
a bipartite matching between components and colors. The pair
``(component, color)`` stands for the lowest-id edge of that color inside the
component and is weighted by that id, so the lexicographically smallest
maximum rainbow matching is the maximum bipartite matching with the smallest
sorted weights.

`StarForestKernel` keeps the component/color bipartite graph and its optimum
so that branching solvers can re-solve after deleting a few vertices and
banning a few colors with a warm-started augmentation.
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from ..domain.models import ColoredGraph, RainbowMatching
from ..schemas.errors import PreconditionError
from .bipartite import (
    UNMATCHED,
    BipartiteGraph,
    HopcroftKarp,
    lexicographic_matching,
    matching_size,
)
from .models import BannedColorSet, SolveMethod, SolveResult

logger = logging.getLogger(__name__)

Pair = Tuple[int, int, int]


def _component_shape(degree: Counter, vertices: Tuple[int, ...], edges: int) -> str:
    n = len(vertices)
    if n == 3 and edges == 3:
        return "triangle"
    if edges == n - 1 and max(degree[v] for v in vertices) == n - 1:
        return "star"
    return "other"


class StarForestKernel:
    """Component/color bipartite graph of a star-or-triangle edge set.

    Parameters
    ----------
    graph : ColoredGraph
        Host instance.
    edge_ids : iterable of int, optional
        Edges to consider; defaults to all edges.
    banned : BannedColorSet, optional
        Colors to ignore; edges of these colors are dropped up front.

    Raises
    ------
    PreconditionError
        If a component of the considered edges is neither a star nor a
        triangle.
    """

    def __init__(
        self,
        graph: ColoredGraph,
        edge_ids: Optional[Iterable[int]] = None,
        banned: Optional[BannedColorSet] = None,
    ):
        self.graph = graph
        banned = banned or BannedColorSet()
        ids = range(graph.edge_count) if edge_ids is None else sorted(set(edge_ids))
        self.edge_ids: Tuple[int, ...] = tuple(
            e for e in ids if graph.color(e) not in banned
        )

        nxg = nx.Graph()
        degree: Counter = Counter()
        for eid in self.edge_ids:
            u, v = graph.endpoints(eid)
            nxg.add_edge(u, v)
            degree[u] += 1
            degree[v] += 1

        self.components: List[Tuple[int, ...]] = sorted(
            tuple(sorted(c)) for c in nx.connected_components(nxg)
        )
        self.vertex_component: Dict[int, int] = {
            v: idx for idx, vertices in enumerate(self.components) for v in vertices
        }
        buckets: List[List[int]] = [[] for _ in self.components]
        for eid in self.edge_ids:
            buckets[self.vertex_component[graph.endpoints(eid)[0]]].append(eid)
        self.component_edges: List[Tuple[int, ...]] = [tuple(b) for b in buckets]

        self.centers: List[Optional[int]] = []
        for vertices, eids in zip(self.components, self.component_edges):
            shape = _component_shape(degree, vertices, len(eids))
            if shape == "other":
                raise PreconditionError(
                    "component is neither a star nor a triangle",
                    {"vertices": list(vertices[:20])},
                )
            # a single edge has no distinguished center
            center = None
            if shape == "star" and len(eids) > 1:
                center = max(vertices, key=lambda v: (degree[v], -v))
            self.centers.append(center)

        self.colors: Tuple[int, ...] = tuple(
            sorted({graph.color(e) for e in self.edge_ids})
        )
        self.color_index = {c: i for i, c in enumerate(self.colors)}
        rows = [self._row(eids) for eids in self.component_edges]
        self.bipartite = BipartiteGraph(len(self.components), len(self.colors), rows)
        self._pairs: List[Pair] = sorted(
            pair
            for comp, eids in enumerate(self.component_edges)
            for pair in self._pairs_of(comp, eids)
        )
        self._solver = HopcroftKarp(self.bipartite)
        self._base: Optional[List[int]] = None

    def _row(self, eids: Iterable[int]) -> List[int]:
        return sorted({self.color_index[self.graph.color(e)] for e in eids})

    def _pairs_of(self, comp: int, eids: Iterable[int]) -> List[Pair]:
        lowest: Dict[int, int] = {}
        for e in eids:
            lowest.setdefault(self.color_index[self.graph.color(e)], e)
        return [(e, comp, right) for right, e in lowest.items()]

    @property
    def base_matching(self) -> List[int]:
        """Optimum of the unrestricted kernel (computed once)."""
        if self._base is None:
            self._base = self._solver.solve()
        return self._base

    @property
    def base_size(self) -> int:
        return sum(1 for right in self.base_matching if right != UNMATCHED)

    def solve(
        self,
        removed_vertices: Iterable[int] = (),
        banned_colors: Iterable[int] = (),
        at_least: int = 0,
    ) -> Optional[Tuple[int, ...]]:
        """Lexicographically smallest maximum rainbow matching of a residual.

        Deleting a star's center (or any vertex of a single edge) removes the
        whole component; deleting a leaf or a triangle vertex drops only the
        edges at that vertex. Returns sorted edge ids of the host graph, or
        None when the optimum is smaller than ``at_least``.
        """
        skip_left: set = set()
        cut: Dict[int, set] = {}
        for v in removed_vertices:
            comp = self.vertex_component.get(v)
            if comp is None or comp in skip_left:
                continue
            if self.centers[comp] == v or len(self.component_edges[comp]) == 1:
                skip_left.add(comp)
                cut.pop(comp, None)
            else:
                cut.setdefault(comp, set()).add(v)

        remaining: Dict[int, Tuple[int, ...]] = {}
        overrides: Dict[int, List[int]] = {}
        for comp, gone in cut.items():
            kept = tuple(
                e
                for e in self.component_edges[comp]
                if not gone.intersection(self.graph.endpoints(e))
            )
            remaining[comp] = kept
            overrides[comp] = self._row(kept)

        skip_right = {
            self.color_index[c] for c in banned_colors if c in self.color_index
        }
        match = self._solver.solve(
            initial=self.base_matching,
            skip_left=skip_left,
            skip_right=skip_right,
            overrides=overrides,
        )
        if matching_size(match) < at_least:
            return None
        return self._lift(match, skip_left, skip_right, remaining)

    def _lift(
        self,
        match: List[int],
        skip_left: set,
        skip_right: set,
        remaining: Dict[int, Tuple[int, ...]],
    ) -> Tuple[int, ...]:
        blocked = skip_left | set(remaining)
        pairs = [
            p for p in self._pairs if p[1] not in blocked and p[2] not in skip_right
        ]
        if remaining:
            for comp, eids in remaining.items():
                pairs.extend(
                    p for p in self._pairs_of(comp, eids) if p[2] not in skip_right
                )
            pairs.sort()
        kept = lexicographic_matching(len(self.colors), pairs, match)
        return tuple(e for e, _, _ in kept)


def solve_star_triangle(
    graph: ColoredGraph,
    banned: Optional[BannedColorSet | Iterable[int]] = None,
    edges: Optional[Iterable[int]] = None,
) -> SolveResult:
    """Maximum rainbow matching of a graph whose components are stars or triangles.

    Parameters
    ----------
    graph : ColoredGraph
        Instance; isolated vertices are ignored.
    banned : BannedColorSet or iterable of int, optional
        Colors that may not be used.
    edges : iterable of int, optional
        Restrict the instance to these edge ids.

    Raises
    ------
    PreconditionError
        If a component of the (restricted) instance is neither a star nor a
        triangle.

    Examples
    --------
    >>> g = parse_instance("p cgraph 4 3\\ne 1 2 a\\ne 1 3 b\\ne 1 4 a\\n")
    >>> solve_star_triangle(g).size
    1
    """
    kernel = StarForestKernel(graph, edges, BannedColorSet.coerce(graph, banned))
    ids = kernel.solve()
    logger.debug(
        "star_triangle.solved components=%d colors=%d size=%d",
        len(kernel.components),
        len(kernel.colors),
        len(ids),
    )
    return SolveResult(
        matching=RainbowMatching.checked(graph, ids),
        method=SolveMethod.STAR_TRIANGLE,
    )
