"""Named cubic source graphs and their validation.

Sources are simple 3-regular graphs that are triangle-free and bridgeless;
by Petersen's theorem every such graph has a perfect matching, which is the
first step of every reduction chain.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple, Union

import networkx as nx

from ..schemas.errors import PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubicSource:
    """Uncolored simple graph on vertices ``1..vertex_count``.

    ``edges`` are sorted pairs ``(u, v)`` with ``u < v``.
    """

    name: str
    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_networkx(cls, name: str, graph: nx.Graph) -> "CubicSource":
        """Relabel the sorted nodes of `graph` to ``1..n``."""
        order = sorted(graph.nodes)
        index = {v: i for i, v in enumerate(order, start=1)}
        edges = sorted(
            (min(index[a], index[b]), max(index[a], index[b])) for a, b in graph.edges
        )
        return cls(name=name, vertex_count=len(order), edges=tuple(edges))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.vertex_count + 1))
        graph.add_edges_from(self.edges)
        return graph

    @property
    def edge_count(self) -> int:
        return len(self.edges)


class SourceProblemKind(str, Enum):
    DEGREE = "degree"
    TRIANGLE = "triangle"
    BRIDGE = "bridge"


@dataclass(frozen=True)
class SourceProblem:
    kind: SourceProblemKind
    witness: Tuple[int, ...]


@dataclass(frozen=True)
class SourceVerdict:
    """Result of `validate_cubic_source`; one witness per violated property."""

    problems: Tuple[SourceProblem, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.problems


def validate_cubic_source(graph: Union[CubicSource, nx.Graph]) -> SourceVerdict:
    """Check 3-regularity, triangle-freeness and bridgelessness.

    Examples
    --------
    >>> validate_cubic_source(named_source("k33")).ok
    True
    >>> validate_cubic_source(nx.complete_graph(4)).problems[0].kind
    <SourceProblemKind.TRIANGLE: 'triangle'>
    """
    nxg = graph.to_networkx() if isinstance(graph, CubicSource) else graph
    problems: List[SourceProblem] = []

    bad_degree = sorted(v for v, d in nxg.degree() if d != 3)
    if bad_degree:
        problems.append(SourceProblem(SourceProblemKind.DEGREE, (bad_degree[0],)))

    triangle: Optional[Tuple[int, ...]] = None
    for v in sorted(n for n, t in nx.triangles(nxg).items() if t):
        for a, b in combinations(sorted(nxg.adj[v]), 2):
            if nxg.has_edge(a, b):
                triangle = tuple(sorted((v, a, b)))
                break
        if triangle:
            break
    if triangle:
        problems.append(SourceProblem(SourceProblemKind.TRIANGLE, triangle))

    bridges = sorted(tuple(sorted(e)) for e in nx.bridges(nxg))
    if bridges:
        problems.append(SourceProblem(SourceProblemKind.BRIDGE, bridges[0]))

    return SourceVerdict(tuple(problems))


_CATALOG: Dict[str, Callable[[], nx.Graph]] = {
    "k33": lambda: nx.complete_bipartite_graph(3, 3),
    "heawood": nx.heawood_graph,
    "pappus": nx.pappus_graph,
    "moebius-kantor": nx.moebius_kantor_graph,
    "desargues": nx.desargues_graph,
    "petersen": nx.petersen_graph,
}


def source_names() -> List[str]:
    return list(_CATALOG)


def named_source(name: str) -> CubicSource:
    """Return a validated catalog graph.

    Raises
    ------
    PreconditionError
        For an unknown name.
    """
    try:
        build = _CATALOG[name]
    except KeyError:
        raise PreconditionError(
            f"unknown source '{name}'", {"known": source_names()}
        ) from None
    source = CubicSource.from_networkx(name, build())
    verdict = validate_cubic_source(source)
    if not verdict.ok:
        raise PreconditionError(
            f"catalog graph '{name}' is not a valid cubic source",
            {"problem": verdict.problems[0].kind.value},
        )
    return source


def _exhaustive_perfect_matching(
    source: CubicSource,
) -> Optional[Tuple[Tuple[int, int], ...]]:
    # lex-first perfect matching by DFS over the lowest uncovered vertex
    nxg = source.to_networkx()

    def extend(covered: frozenset, picked: List[Tuple[int, int]]):
        free = [v for v in range(1, source.vertex_count + 1) if v not in covered]
        if not free:
            return tuple(picked)
        v = free[0]
        for w in sorted(nxg.adj[v]):
            if w in covered:
                continue
            found = extend(covered | {v, w}, picked + [(min(v, w), max(v, w))])
            if found:
                return found
        return None

    return extend(frozenset(), [])


def find_perfect_matching(
    source: CubicSource, exhaustive: bool = False
) -> Tuple[Tuple[int, int], ...]:
    """Perfect matching of a cubic source, as sorted vertex pairs.

    Uses the blossom algorithm (``networkx.max_weight_matching`` with
    ``maxcardinality``). ``exhaustive=True`` instead returns the lex-first
    perfect matching by enumeration and is limited to 20 edges.

    Raises
    ------
    PreconditionError
        If no perfect matching exists or the exhaustive search is asked for
        on a larger graph.
    """
    if exhaustive:
        if source.edge_count > 20:
            raise PreconditionError(
                "exhaustive perfect matching is limited to 20 edges",
                {"edges": source.edge_count},
            )
        found = _exhaustive_perfect_matching(source)
        if found is None:
            raise PreconditionError("graph has no perfect matching")
        return found

    pairs = nx.max_weight_matching(source.to_networkx(), maxcardinality=True)
    matching = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
    if 2 * len(matching) != source.vertex_count:
        raise PreconditionError(
            "maximum matching is not perfect",
            {"size": len(matching), "vertices": source.vertex_count},
        )
    logger.debug(
        "gadgets.perfect_matching source=%s size=%d", source.name, len(matching)
    )
    return matching
