"""Color-line graph construction and its independent-set correspondence.

The color-line graph of an edge-colored graph has one vertex per edge; two
vertices are adjacent when the edges share an endpoint or a color. Rainbow
matchings of the source are exactly the independent sets of this graph, which
is what lets the approximation run on a claw-free independent-set problem.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import (
    AbstractSet,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import networkx as nx

from ..schemas.errors import PreconditionError
from .models import ColoredGraph, RainbowMatching

logger = logging.getLogger(__name__)


class ConflictKind(str, Enum):
    INCIDENT = "incident"
    SAME_COLOR = "same-color"


@dataclass(frozen=True)
class ColorLineGraph:
    """Conflict graph over the edges of `source`.

    Attributes
    ----------
    vertex_count : int
        Equals ``source.edge_count``; vertex ``i`` is edge id ``i``.
    neighbors : tuple of frozenset
        Adjacency sets.
    provenance : dict
        For each adjacent pair ``(i, j)`` with ``i < j``, the reasons they
        conflict.
    source : ColoredGraph
        The graph this was built from.
    """

    vertex_count: int
    neighbors: Tuple[FrozenSet[int], ...]
    provenance: Dict[Tuple[int, int], FrozenSet[ConflictKind]]
    source: ColoredGraph

    def flags(self, a: int, b: int) -> FrozenSet[ConflictKind]:
        """Conflict reasons between vertices ``a`` and ``b`` (empty if none)."""
        key = (a, b) if a < b else (b, a)
        return self.provenance.get(key, frozenset())

    def adjacent(self, a: int, b: int) -> bool:
        return b in self.neighbors[a]

    def edge_count(self) -> int:
        return len(self.provenance)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        for (a, b), kinds in self.provenance.items():
            graph.add_edge(a, b, kinds=kinds)
        return graph


def build_color_line(graph: ColoredGraph) -> ColorLineGraph:
    """Construct the color-line graph of `graph` with provenance flags.

    Pairs are generated per shared endpoint and per shared color, which
    visits every adjacent pair of the quadratic pair scan and no other.
    """
    marks: Dict[Tuple[int, int], set] = defaultdict(set)
    for eids in graph.incidence:
        for a, b in combinations(eids, 2):
            marks[(a, b) if a < b else (b, a)].add(ConflictKind.INCIDENT)
    by_color: Dict[int, List[int]] = defaultdict(list)
    for eid, (_, _, c) in enumerate(graph.edges):
        by_color[c].append(eid)
    for eids in by_color.values():
        for a, b in combinations(eids, 2):
            marks[(a, b)].add(ConflictKind.SAME_COLOR)

    neighbors: List[set] = [set() for _ in range(graph.edge_count)]
    for a, b in marks:
        neighbors[a].add(b)
        neighbors[b].add(a)
    provenance = {key: frozenset(val) for key, val in sorted(marks.items())}
    logger.debug(
        "color_line.built vertices=%d edges=%d", graph.edge_count, len(provenance)
    )
    return ColorLineGraph(
        vertex_count=graph.edge_count,
        neighbors=tuple(frozenset(n) for n in neighbors),
        provenance=provenance,
        source=graph,
    )


def lift_independent_set(
    cl: ColorLineGraph, vertices: Iterable[int]
) -> RainbowMatching:
    """Read an independent set of `cl` as a rainbow matching of its source.

    Raises
    ------
    PreconditionError
        If the set is not independent or names a vertex outside `cl`.
    """
    chosen = sorted(set(vertices))
    for v in chosen:
        if not 0 <= v < cl.vertex_count:
            raise PreconditionError(f"vertex {v} not in color-line graph")
    members = set(chosen)
    for v in chosen:
        clash = cl.neighbors[v] & members
        if clash:
            raise PreconditionError(
                "vertex set is not independent", {"pair": [v, min(clash)]}
            )
    return RainbowMatching.checked(cl.source, chosen)


AdjacencyLike = Union[ColorLineGraph, Sequence[AbstractSet[int]]]


def adjacency_sets(adjacency: AdjacencyLike) -> Sequence[AbstractSet[int]]:
    if isinstance(adjacency, ColorLineGraph):
        return adjacency.neighbors
    return adjacency


@dataclass(frozen=True)
class ForbiddenSubgraphVerdict:
    """Result of a forbidden-subgraph scan; ``witness`` is set on failure."""

    witness: Optional[Tuple[int, ...]] = None

    @property
    def ok(self) -> bool:
        return self.witness is None


def independent_subset(
    candidates: Sequence[int], size: int, adj: Sequence[AbstractSet[int]]
) -> Optional[Tuple[int, ...]]:
    """First pairwise non-adjacent `size`-subset of `candidates` in lex order."""

    def extend(start: int, picked: List[int]) -> Optional[Tuple[int, ...]]:
        if len(picked) == size:
            return tuple(picked)
        for i in range(start, len(candidates)):
            if len(candidates) - i < size - len(picked):
                return None
            v = candidates[i]
            if all(v not in adj[p] for p in picked):
                picked.append(v)
                found = extend(i + 1, picked)
                if found:
                    return found
                picked.pop()
        return None

    return extend(0, [])


def _clique(
    candidates: Sequence[int], size: int, adj: Sequence[AbstractSet[int]]
) -> Optional[Tuple[int, ...]]:
    def extend(pool: List[int], picked: List[int]) -> Optional[Tuple[int, ...]]:
        if len(picked) == size:
            return tuple(picked)
        for i, v in enumerate(pool):
            if len(pool) - i < size - len(picked):
                return None
            rest = [w for w in pool[i + 1 :] if w in adj[v]]
            found = extend(rest, picked + [v])
            if found:
                return found
        return None

    return extend(list(candidates), [])


def check_k14_free(adjacency: AdjacencyLike) -> ForbiddenSubgraphVerdict:
    """Check that no vertex has four pairwise non-adjacent neighbors.

    On failure the witness is the center followed by the four leaves.
    """
    adj = adjacency_sets(adjacency)
    for v in range(len(adj)):
        leaves = independent_subset(sorted(adj[v]), 4, adj)
        if leaves:
            return ForbiddenSubgraphVerdict((v, *leaves))
    return ForbiddenSubgraphVerdict()


def check_k7e_free(adjacency: AdjacencyLike) -> ForbiddenSubgraphVerdict:
    """Check that no seven vertices induce ``K7`` minus one edge.

    Such a subgraph is a non-adjacent pair plus a 5-clique inside their
    common neighborhood; the witness lists the seven vertices sorted.
    """
    adj = adjacency_sets(adjacency)
    n = len(adj)
    if n < 7:
        return ForbiddenSubgraphVerdict()
    for u in range(n):
        for w in range(u + 1, n):
            if w in adj[u]:
                continue
            common = sorted(adj[u] & adj[w])
            if len(common) < 5:
                continue
            core = _clique(common, 5, adj)
            if core:
                return ForbiddenSubgraphVerdict(tuple(sorted((u, w, *core))))
    return ForbiddenSubgraphVerdict()


def independent_sets(adjacency: AdjacencyLike) -> Iterator[FrozenSet[int]]:
    """Enumerate every independent set (exponential; small graphs only)."""
    adj = adjacency_sets(adjacency)

    def grow(start: int, picked: FrozenSet[int]) -> Iterator[FrozenSet[int]]:
        yield picked
        for v in range(start, len(adj)):
            if not adj[v] & picked:
                yield from grow(v + 1, picked | {v})

    yield from grow(0, frozenset())


def dump_color_line(cl: ColorLineGraph) -> Iterator[Tuple[str, object]]:
    """Key-value items describing `cl`, one line per adjacent pair."""
    yield "vertex_count", cl.vertex_count
    yield "edge_count", cl.edge_count()
    for (a, b), kinds in cl.provenance.items():
        yield f"pair.{a}.{b}", sorted(k.value for k in kinds)
