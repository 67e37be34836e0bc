"""Canonical domain data model shared by every solver and generator.

`ColoredGraph` is the universal instance type and `RainbowMatching` the
universal solution type. Both are immutable after construction. Edge order is
canonical (sorted by endpoint pair) so that an edge id is simply a position in
`ColoredGraph.edges`, and color ids are dense, assigned by first occurrence in
that canonical order.

`StructureReport` and its component records are Pydantic models because they
are serialized into reports; the graph itself stays a plain frozen dataclass so
that large instances do not pay per-edge validation cost twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from ..schemas.errors import InvariantViolation, PreconditionError

Edge = Tuple[int, int, int]


@dataclass(frozen=True)
class ColoredGraph:
    """Simple undirected graph with a color on every edge.

    Attributes
    ----------
    vertex_count : int
        Number of vertices; vertex ids are ``1..vertex_count``.
    edges : tuple of (u, v, color_id)
        Canonically ordered edges with ``u < v``; edge id = position.
    color_names : tuple of str
        Original label for each dense color id.
    """

    vertex_count: int
    edges: Tuple[Edge, ...]
    color_names: Tuple[str, ...]

    @classmethod
    def from_edges(
        cls, vertex_count: int, labelled: Iterable[Tuple[int, int, str]]
    ) -> "ColoredGraph":
        """Build a canonical graph from ``(u, v, label)`` triples.

        Raises
        ------
        PreconditionError
            On self-loops, out-of-range vertices or duplicate vertex pairs.
        """
        if vertex_count < 0:
            raise PreconditionError(f"negative vertex count {vertex_count}")
        keyed: Dict[Tuple[int, int], str] = {}
        for u, v, label in labelled:
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            for w in (u, v):
                if not 1 <= w <= vertex_count:
                    raise PreconditionError(f"vertex {w} out of range")
            key = (u, v) if u < v else (v, u)
            if key in keyed:
                raise PreconditionError(f"duplicate edge {key[0]}-{key[1]}")
            keyed[key] = label
        ids: Dict[str, int] = {}
        edges: List[Edge] = []
        for (u, v), label in sorted(keyed.items()):
            color = ids.setdefault(label, len(ids))
            edges.append((u, v, color))
        return cls(vertex_count, tuple(edges), tuple(ids))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def color_count(self) -> int:
        return len(self.color_names)

    def color(self, edge_id: int) -> int:
        return self.edges[edge_id][2]

    def label(self, edge_id: int) -> str:
        return self.color_names[self.edges[edge_id][2]]

    def endpoints(self, edge_id: int) -> Tuple[int, int]:
        u, v, _ = self.edges[edge_id]
        return u, v

    @cached_property
    def incidence(self) -> Tuple[Tuple[int, ...], ...]:
        """Edge ids incident to each vertex (index 0 is unused)."""
        buckets: List[List[int]] = [[] for _ in range(self.vertex_count + 1)]
        for eid, (u, v, _) in enumerate(self.edges):
            buckets[u].append(eid)
            buckets[v].append(eid)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Sorted neighbor lists (index 0 is unused)."""
        out: List[Tuple[int, ...]] = []
        for v, eids in enumerate(self.incidence):
            out.append(tuple(sorted(self.other_end(e, v) for e in eids)))
        return tuple(out)

    @cached_property
    def _index(self) -> Dict[Tuple[int, int], int]:
        return {(u, v): eid for eid, (u, v, _) in enumerate(self.edges)}

    def edge_id(self, u: int, v: int) -> int:
        """Return the id of edge ``uv``; raises KeyError if absent."""
        return self._index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def other_end(self, edge_id: int, v: int) -> int:
        u, w, _ = self.edges[edge_id]
        return w if u == v else u

    def color_multiplicity(self) -> List[int]:
        counts = [0] * self.color_count
        for _, _, c in self.edges:
            counts[c] += 1
        return counts

    def to_networkx(self) -> nx.Graph:
        """Uncolored networkx view; edges carry ``id`` and ``color`` attributes."""
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.vertex_count + 1))
        for eid, (u, v, c) in enumerate(self.edges):
            graph.add_edge(u, v, id=eid, color=c)
        return graph

    def restrict(
        self, edge_ids: Iterable[int]
    ) -> Tuple["ColoredGraph", Tuple[int, ...]]:
        """Materialize the spanning subgraph on ``edge_ids``.

        Returns the new graph (same vertex set and labels) and, for each of
        its edge ids, the id of the originating edge in ``self``.
        """
        chosen = sorted(set(edge_ids))
        sub = ColoredGraph.from_edges(
            self.vertex_count,
            ((self.edges[e][0], self.edges[e][1], self.label(e)) for e in chosen),
        )
        # canonical order is preserved by restriction
        return sub, tuple(chosen)


@dataclass(frozen=True)
class RainbowMatching:
    """A vertex-disjoint, color-distinct set of edge ids of one graph."""

    edge_ids: Tuple[int, ...] = ()

    @classmethod
    def checked(
        cls, graph: ColoredGraph, edge_ids: Iterable[int]
    ) -> "RainbowMatching":
        """Build a matching and assert both rainbow invariants."""
        ids = tuple(sorted(set(edge_ids)))
        seen_vertices: set[int] = set()
        seen_colors: set[int] = set()
        for eid in ids:
            u, v, c = graph.edges[eid]
            if u in seen_vertices or v in seen_vertices or c in seen_colors:
                raise InvariantViolation(
                    "solver produced a non-rainbow matching", {"edges": list(ids)}
                )
            seen_vertices.update((u, v))
            seen_colors.add(c)
        return cls(ids)

    @property
    def size(self) -> int:
        return len(self.edge_ids)

    def __len__(self) -> int:
        return len(self.edge_ids)


class ViolationKind(str, Enum):
    SHARED_VERTEX = "shared-vertex"
    SHARED_COLOR = "shared-color"


@dataclass(frozen=True)
class Violation:
    """One offending pair of edges in a candidate matching."""

    kind: ViolationKind
    first: int
    second: int


@dataclass(frozen=True)
class SolutionVerdict:
    """Outcome of `validate_solution`."""

    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


class ComponentKind(str, Enum):
    ISOLATED = "isolated-vertex"
    STAR = "star"
    TRIANGLE = "triangle"
    PATH = "path"
    TREE_OTHER = "tree-other"
    CYCLIC = "cyclic"


class ComponentInfo(BaseModel):
    """Facts about one connected component.

    Attributes
    ----------
    vertices : List[int]
        Sorted vertex ids of the component.
    edge_count : int
        Number of edges inside the component.
    kind : ComponentKind
        Classification used by solver dispatch.
    longest_path : Optional[List[int]]
        Vertex sequence of the canonical longest path (trees only).
    """

    vertices: List[int]
    edge_count: int
    kind: ComponentKind
    longest_path: Optional[List[int]] = None

    @property
    def is_tree(self) -> bool:
        return self.kind != ComponentKind.CYCLIC

    @property
    def path_vertex_count(self) -> int:
        return len(self.longest_path) if self.longest_path else 0


class StructureReport(BaseModel):
    """Class-membership facts that drive solver dispatch.

    ``p_subgraph_free_up_to`` is the smallest ``l`` such that the graph has no
    ``P_l`` subgraph. It is exact for forests and for P4-subgraph-free graphs;
    for cyclic graphs that contain a P4 it holds the sound lower bound 5 and
    ``p_subgraph_free_exact`` is false.
    """

    vertex_count: int
    edge_count: int
    color_count: int
    components: List[ComponentInfo] = Field(default_factory=list)
    is_forest: bool
    is_tree: bool
    is_path: bool
    is_linear_forest: bool
    p4_subgraph_free: bool
    p_subgraph_free_up_to: int
    p_subgraph_free_exact: bool
    p4_component_count: int
    properly_colored: bool
    max_color_multiplicity: int

    def has_no_path(self, vertices: int) -> bool:
        """True when the graph provably contains no ``P_vertices`` subgraph."""
        if not self.p_subgraph_free_exact:
            return False
        return self.p_subgraph_free_up_to <= vertices

    def nontrivial_components(self) -> Sequence[ComponentInfo]:
        return [c for c in self.components if c.edge_count > 0]
