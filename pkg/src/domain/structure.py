"""Structural analysis that drives solver dispatch.

Components are classified (isolated vertex, star, triangle, path, other tree,
cyclic), every tree component gets a canonical longest path from a
deterministic double sweep, and path-subgraph freeness is derived from those
paths. The central edge of a tree is the edge joining the two middle vertices
of its canonical longest path.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Collection, Dict, Iterable, List, Optional, Sequence

import networkx as nx

from ..schemas.errors import InvariantViolation, PreconditionError
from .models import ColoredGraph, ComponentInfo, ComponentKind, StructureReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CentralEdge:
    """Middle edge of a canonical longest path: ``x`` precedes ``y`` on it."""

    x: int
    y: int
    edge_id: int


def _farthest(graph: nx.Graph, source: int) -> int:
    dist = nx.single_source_shortest_path_length(graph, source)
    best = max(dist.values())
    return min(v for v, d in dist.items() if d == best)


def longest_tree_path(graph: nx.Graph, vertices: Collection[int]) -> List[int]:
    """Canonical longest path of a tree component by double sweep.

    The sweep starts at the lowest vertex id and breaks farthest-vertex ties
    by lowest id, so the result depends only on the tree.
    """
    start = min(vertices)
    if len(vertices) == 1:
        return [start]
    sub = graph.subgraph(vertices)
    a = _farthest(sub, start)
    b = _farthest(sub, a)
    return list(nx.shortest_path(sub, a, b))


def _classify(
    graph: nx.Graph, vertices: Sequence[int], edge_count: int
) -> ComponentKind:
    n = len(vertices)
    if n == 1:
        return ComponentKind.ISOLATED
    if edge_count == n - 1:
        degrees = [graph.degree(v) for v in vertices]
        if max(degrees) == n - 1:
            return ComponentKind.STAR
        if max(degrees) <= 2:
            return ComponentKind.PATH
        return ComponentKind.TREE_OTHER
    if n == 3 and edge_count == 3:
        return ComponentKind.TRIANGLE
    return ComponentKind.CYCLIC


def component_infos(graph: nx.Graph) -> List[ComponentInfo]:
    """Classify every component of an uncolored networkx graph.

    Components are ordered by their lowest vertex id.
    """
    infos: List[ComponentInfo] = []
    parts = sorted(
        (sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0]
    )
    for vertices in parts:
        edge_count = sum(graph.degree(v) for v in vertices) // 2
        kind = _classify(graph, vertices, edge_count)
        path: Optional[List[int]] = None
        if kind != ComponentKind.CYCLIC and kind != ComponentKind.TRIANGLE:
            path = longest_tree_path(graph, vertices)
        infos.append(
            ComponentInfo(
                vertices=vertices, edge_count=edge_count, kind=kind, longest_path=path
            )
        )
    return infos


def analyze(graph: ColoredGraph) -> StructureReport:
    """Compute the `StructureReport` of `graph`.

    Examples
    --------
    >>> analyze(star_k15).components[0].kind
    <ComponentKind.STAR: 'star'>
    >>> analyze(path_p7).p_subgraph_free_up_to
    8
    """
    nxg = graph.to_networkx()
    infos = component_infos(nxg)

    is_forest = all(
        c.kind not in (ComponentKind.CYCLIC, ComponentKind.TRIANGLE) for c in infos
    )
    p4_free = all(
        c.kind in (ComponentKind.ISOLATED, ComponentKind.STAR, ComponentKind.TRIANGLE)
        for c in infos
    )
    max_degree = max(
        (graph.degree(v) for v in range(1, graph.vertex_count + 1)), default=0
    )

    if is_forest:
        longest = max((c.path_vertex_count for c in infos), default=0)
        free_up_to, exact = longest + 1, True
    elif p4_free:
        # a triangle is present, so P3 occurs and P4 does not
        free_up_to, exact = 4, True
    else:
        free_up_to, exact = 5, False

    properly_colored = True
    for eids in graph.incidence:
        colors = [graph.color(e) for e in eids]
        if len(colors) != len(set(colors)):
            properly_colored = False
            break

    report = StructureReport(
        vertex_count=graph.vertex_count,
        edge_count=graph.edge_count,
        color_count=graph.color_count,
        components=infos,
        is_forest=is_forest,
        is_tree=is_forest and len(infos) == 1,
        is_path=is_forest and len(infos) == 1 and max_degree <= 2,
        is_linear_forest=is_forest and max_degree <= 2,
        p4_subgraph_free=p4_free,
        p_subgraph_free_up_to=free_up_to,
        p_subgraph_free_exact=exact,
        p4_component_count=sum(1 for c in infos if c.path_vertex_count >= 4),
        properly_colored=properly_colored,
        max_color_multiplicity=max(graph.color_multiplicity(), default=0),
    )
    logger.debug(
        "structure.analyzed components=%d forest=%s p_free=%d",
        len(infos),
        is_forest,
        free_up_to,
    )
    return report


def report_items(report: StructureReport) -> Iterable[tuple]:
    """Flatten a report into ordered key-value pairs for the report format."""
    yield "vertex_count", report.vertex_count
    yield "edge_count", report.edge_count
    yield "color_count", report.color_count
    yield "component_count", len(report.components)
    yield "is_forest", report.is_forest
    yield "is_tree", report.is_tree
    yield "is_path", report.is_path
    yield "is_linear_forest", report.is_linear_forest
    yield "p4_subgraph_free", report.p4_subgraph_free
    yield "p_subgraph_free_up_to", report.p_subgraph_free_up_to
    yield "p_subgraph_free_exact", report.p_subgraph_free_exact
    yield "p4_component_count", report.p4_component_count
    yield "properly_colored", report.properly_colored
    yield "max_color_multiplicity", report.max_color_multiplicity
    for idx, comp in enumerate(report.components):
        yield f"component.{idx}.kind", comp.kind
        yield f"component.{idx}.vertices", comp.vertices
        if comp.longest_path is not None:
            yield f"component.{idx}.longest_path", comp.longest_path


def central_edge(
    graph: ColoredGraph, component: Optional[Collection[int]] = None
) -> CentralEdge:
    """Return the central edge of a tree component.

    Parameters
    ----------
    graph : ColoredGraph
        Instance holding the component.
    component : collection of vertex ids, optional
        Vertices of the component; defaults to the whole graph, which then
        has to be a tree.

    Raises
    ------
    PreconditionError
        If the component is not a tree or contains no P4.
    InvariantViolation
        If the component is P7-free yet some vertex lies farther than 2 from
        the central edge.
    """
    nxg = graph.to_networkx()
    vertices = sorted(component) if component is not None else list(nxg.nodes)
    return central_edge_of(graph, nxg, vertices)


def central_edge_of(
    graph: ColoredGraph, nxg: nx.Graph, vertices: Sequence[int]
) -> CentralEdge:
    """`central_edge` on a prebuilt networkx view (used inside solvers)."""
    if not vertices:
        raise PreconditionError("empty component has no central edge")
    sub = nxg.subgraph(vertices)
    if not nx.is_tree(sub):
        raise PreconditionError(
            "component is not a tree", {"vertices": list(vertices)[:20]}
        )
    path = longest_tree_path(nxg, vertices)
    if len(path) < 4:
        raise PreconditionError("component contains no P4", {"longest_path": path})
    mid = math.ceil(len(path) / 2) - 1
    x, y = path[mid], path[mid + 1]
    if len(path) <= 6:
        dist: Dict[int, int] = nx.multi_source_dijkstra_path_length(sub, {x, y})
        far = [v for v, d in dist.items() if d > 2]
        if far:
            raise InvariantViolation(
                "P7-free tree has a vertex farther than 2 from its central edge",
                {"central": [x, y], "vertex": min(far)},
            )
    return CentralEdge(x=x, y=y, edge_id=graph.edge_id(x, y))
