"""Hopcroft-Karp maximum bipartite matching with warm starts.

Left vertices are ``0..num_left-1`` and right vertices ``0..num_right-1``.
Adjacency lists are scanned in the order given, so for fixed input the
returned matching is fully deterministic.

Branching solvers call `HopcroftKarp.solve` many times on slight variants of
one graph: a handful of left or right vertices removed, a few left lists
shortened. Passing the unrestricted optimum as ``initial`` lets each call
repair that matching with a few augmenting phases instead of starting over.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import AbstractSet, Dict, List, Mapping, Optional, Sequence, Set, Tuple

UNMATCHED = -1
_INFINITY = float("inf")


@dataclass(frozen=True)
class BipartiteGraph:
    """Left-to-right adjacency of a bipartite graph."""

    num_left: int
    num_right: int
    adj: Sequence[Sequence[int]]

    def __post_init__(self) -> None:
        if len(self.adj) != self.num_left:
            raise ValueError("adjacency must have one list per left vertex")


class HopcroftKarp:
    """Maximum matching solver over a fixed `BipartiteGraph`.

    Examples
    --------
    >>> g = BipartiteGraph(2, 2, [[0, 1], [0]])
    >>> HopcroftKarp(g).solve()
    [1, 0]
    """

    def __init__(self, graph: BipartiteGraph):
        self.graph = graph

    def solve(
        self,
        initial: Optional[Sequence[int]] = None,
        skip_left: AbstractSet[int] = frozenset(),
        skip_right: AbstractSet[int] = frozenset(),
        overrides: Optional[Mapping[int, Sequence[int]]] = None,
    ) -> List[int]:
        """Return ``match_left``: the right partner of each left vertex or -1.

        Parameters
        ----------
        initial : sequence of int, optional
            A matching of the unrestricted graph to start from. Pairs that
            touch a skipped vertex or an edge missing from an override are
            dropped before augmentation.
        skip_left, skip_right : set of int
            Vertices treated as deleted.
        overrides : mapping, optional
            Replacement adjacency lists for some left vertices.
        """
        n_left = self.graph.num_left
        adj: Sequence[Sequence[int]] = self.graph.adj
        if overrides:
            adj = list(self.graph.adj)
            for left, row in overrides.items():
                adj[left] = row

        match_left = [UNMATCHED] * n_left
        match_right = [UNMATCHED] * self.graph.num_right
        if initial is not None:
            for left, right in enumerate(initial):
                if right == UNMATCHED or left in skip_left or right in skip_right:
                    continue
                if overrides and left in overrides and right not in overrides[left]:
                    continue
                match_left[left] = right
                match_right[right] = left

        dist: List[float] = [_INFINITY] * n_left
        while True:
            free_layer = self._layer(
                adj, match_left, match_right, dist, skip_left, skip_right
            )
            if free_layer == _INFINITY:
                break
            pointer = [0] * n_left
            for left in range(n_left):
                if match_left[left] == UNMATCHED and left not in skip_left:
                    self._augment(
                        left,
                        adj,
                        match_left,
                        match_right,
                        dist,
                        pointer,
                        free_layer,
                        skip_right,
                    )
        return match_left

    @staticmethod
    def _layer(
        adj: Sequence[Sequence[int]],
        match_left: List[int],
        match_right: List[int],
        dist: List[float],
        skip_left: AbstractSet[int],
        skip_right: AbstractSet[int],
    ) -> float:
        """BFS from free left vertices; returns the layer of the first free right."""
        queue: deque[int] = deque()
        for left in range(len(adj)):
            if match_left[left] == UNMATCHED and left not in skip_left:
                dist[left] = 0
                queue.append(left)
            else:
                dist[left] = _INFINITY
        free_layer = _INFINITY
        while queue:
            left = queue.popleft()
            if dist[left] >= free_layer:
                continue
            for right in adj[left]:
                if right in skip_right:
                    continue
                partner = match_right[right]
                if partner == UNMATCHED:
                    if free_layer == _INFINITY:
                        free_layer = dist[left] + 1
                elif dist[partner] == _INFINITY:
                    dist[partner] = dist[left] + 1
                    queue.append(partner)
        return free_layer

    @staticmethod
    def _augment(
        root: int,
        adj: Sequence[Sequence[int]],
        match_left: List[int],
        match_right: List[int],
        dist: List[float],
        pointer: List[int],
        free_layer: float,
        skip_right: AbstractSet[int],
    ) -> bool:
        # iterative layered DFS; via[i] is the right vertex leaving stack[i]
        stack = [root]
        via: List[int] = []
        while stack:
            left = stack[-1]
            row = adj[left]
            advanced = False
            while pointer[left] < len(row):
                right = row[pointer[left]]
                pointer[left] += 1
                if right in skip_right:
                    continue
                partner = match_right[right]
                if partner == UNMATCHED:
                    if dist[left] + 1 != free_layer:
                        continue
                    via.append(right)
                    for i, node in enumerate(stack):
                        match_left[node] = via[i]
                        match_right[via[i]] = node
                    return True
                if dist[partner] == dist[left] + 1:
                    via.append(right)
                    stack.append(partner)
                    advanced = True
                    break
            if not advanced:
                dist[left] = _INFINITY
                stack.pop()
                if via:
                    via.pop()
        return False


def matching_size(match_left: Sequence[int]) -> int:
    return sum(1 for right in match_left if right != UNMATCHED)


class _Exchange:
    """Matching state for the lexicographic pass.

    Vertices fixed by accepted edges go into ``dead_left`` / ``dead_right``;
    edges that fit in no maximum matching go into ``rejected``.
    """

    def __init__(
        self,
        num_right: int,
        weighted: Sequence[Tuple[int, int, int]],
        match_left: Sequence[int],
    ):
        self.adj: List[List[int]] = [[] for _ in match_left]
        self.radj: List[List[int]] = [[] for _ in range(num_right)]
        for _, left, right in weighted:
            self.adj[left].append(right)
            self.radj[right].append(left)
        self.match_left = list(match_left)
        self.match_right = [UNMATCHED] * num_right
        for left, right in enumerate(self.match_left):
            if right != UNMATCHED:
                self.match_right[right] = left
        self.dead_left: Set[int] = set()
        self.dead_right: Set[int] = set()
        self.rejected: Set[Tuple[int, int]] = set()

    def _open(self, left: int, right: int) -> bool:
        return (
            left not in self.dead_left
            and right not in self.dead_right
            and (left, right) not in self.rejected
            and self.match_left[left] != right
        )

    def from_left(
        self, start: int, goal: int, blocked_right: int
    ) -> Optional[List[Tuple[int, int]]]:
        """Alternating path from ``start`` to ``goal`` or to a free right vertex."""
        parent: Dict[int, Tuple[int, int]] = {}
        seen = {start}
        stack = [start]
        while stack:
            left = stack.pop()
            for right in self.adj[left]:
                if right == blocked_right or not self._open(left, right):
                    continue
                mate = self.match_right[right]
                if right == goal or mate == UNMATCHED:
                    path = [(left, right)]
                    while left in parent:
                        left, right = parent[left]
                        path.append((left, right))
                    return path
                if mate in seen:
                    continue
                seen.add(mate)
                parent[mate] = (left, right)
                stack.append(mate)
        return None

    def to_right(
        self, goal: int, blocked_left: AbstractSet[int], blocked_right: int
    ) -> Optional[List[Tuple[int, int]]]:
        """Alternating path from a free left vertex that ends at ``goal``."""
        parent: Dict[int, Tuple[int, int]] = {}
        seen = {goal}
        stack = [goal]
        while stack:
            right = stack.pop()
            for left in self.radj[right]:
                if left in blocked_left or not self._open(left, right):
                    continue
                own = self.match_left[left]
                if own == UNMATCHED:
                    path = [(left, right)]
                    while right != goal:
                        left, right = parent[right]
                        path.append((left, right))
                    return path
                if own in seen or own == blocked_right:
                    continue
                seen.add(own)
                parent[own] = (left, right)
                stack.append(own)
        return None

    def install(self, path: Sequence[Tuple[int, int]]) -> None:
        for left, right in path:
            self.match_left[left] = right
            self.match_right[right] = left

    def admit(self, left: int, right: int) -> bool:
        """Move ``(left, right)`` into the matching if some maximum one has it."""
        partner = self.match_left[left]
        mate = self.match_right[right]
        if partner != UNMATCHED and mate != UNMATCHED and partner != right:
            path = self.to_right(partner, {left, mate}, right)
            if path is None:
                path = self.from_left(mate, partner, right)
            if path is None:
                return False
            self.match_right[partner] = UNMATCHED
            self.match_left[mate] = UNMATCHED
            self.install(path)
        elif partner != right:
            if partner != UNMATCHED:
                self.match_right[partner] = UNMATCHED
            if mate != UNMATCHED:
                self.match_left[mate] = UNMATCHED
        self.match_left[left] = right
        self.match_right[right] = left
        return True


def lexicographic_matching(
    num_right: int,
    weighted: Sequence[Tuple[int, int, int]],
    match_left: Sequence[int],
) -> List[Tuple[int, int, int]]:
    """Maximum matching whose sorted weight tuple is lexicographically smallest.

    Parameters
    ----------
    num_right : int
        Number of right vertices.
    weighted : sequence of (weight, left, right)
        Every usable edge once, sorted by weight; weights are distinct.
    match_left : sequence of int
        Any maximum matching of those edges, as returned by `HopcroftKarp`.

    Edges are tried lightest first. One is kept when a maximum matching
    through every edge kept so far also contains it; the current matching is
    then rotated along an alternating path or cycle to include it, so the
    size never drops.

    Examples
    --------
    >>> edges = [(0, 0, 0), (1, 1, 1), (2, 0, 1), (3, 1, 0)]
    >>> lexicographic_matching(2, edges, [1, 0])
    [(0, 0, 0), (1, 1, 1)]
    """
    state = _Exchange(num_right, weighted, match_left)
    kept: List[Tuple[int, int, int]] = []
    for weight, left, right in weighted:
        if left in state.dead_left or right in state.dead_right:
            continue
        if state.admit(left, right):
            kept.append((weight, left, right))
            state.dead_left.add(left)
            state.dead_right.add(right)
        else:
            state.rejected.add((left, right))
    return kept
