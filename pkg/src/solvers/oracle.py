"""Brute-force reference solvers for small instances.

Both oracles are include-first depth-first searches in canonical order with a
simple upper bound. Because the incumbent is only replaced by a strictly
larger set, the returned optimum is the lexicographically smallest among all
optima. Instances above the configured cap are refused unless the caller
explicitly allows them, in which case a warning is logged.
"""

from __future__ import annotations

import logging
from typing import Hashable, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import structlog

from ..domain.color_line import AdjacencyLike, adjacency_sets
from ..domain.models import ColoredGraph, RainbowMatching
from ..schemas.errors import SizeCapExceeded
from .models import DEFAULT_ORACLE_CAP, BannedColorSet, SolveMethod, SolveResult

logger = logging.getLogger(__name__)
events = structlog.get_logger(__name__)


def _check_cap(what: str, size: int, cap: int, allow_oversize: bool) -> None:
    if size <= cap:
        return
    if not allow_oversize:
        raise SizeCapExceeded(
            f"{what} has {size} elements, above the oracle cap {cap}",
            {"size": size, "cap": cap},
        )
    events.warning("oracle.cap_override", what=what, size=size, cap=cap)


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def oracle_mrbm(
    graph: ColoredGraph,
    banned: Optional[BannedColorSet | Iterable[int]] = None,
    edges: Optional[Iterable[int]] = None,
    cap: int = DEFAULT_ORACLE_CAP,
    allow_oversize: bool = False,
) -> SolveResult:
    """Exhaustive maximum rainbow matching.

    Parameters
    ----------
    graph : ColoredGraph
        Instance.
    banned : BannedColorSet or iterable of int, optional
        Colors that may not be used.
    edges : iterable of int, optional
        Restrict the search to these edge ids.
    cap : int
        Largest number of usable edges accepted.
    allow_oversize : bool
        Search anyway above the cap.

    Returns
    -------
    SolveResult
        The lexicographically smallest maximum rainbow matching;
        ``branch_count`` is the number of search nodes visited.

    Raises
    ------
    SizeCapExceeded
        If the instance has more usable edges than ``cap``.
    """
    ban = BannedColorSet.coerce(graph, banned)
    ids = range(graph.edge_count) if edges is None else sorted(set(edges))
    usable = [e for e in ids if graph.color(e) not in ban]
    _check_cap("instance", len(usable), cap, allow_oversize)

    vmask = [(1 << graph.edges[e][0]) | (1 << graph.edges[e][1]) for e in usable]
    cbit = [1 << graph.color(e) for e in usable]
    m = len(usable)
    best: List[int] = []
    nodes = 0

    def bound(start: int, used_v: int, used_c: int) -> int:
        colors = 0
        touched = 0
        for j in range(start, m):
            if vmask[j] & used_v or cbit[j] & used_c:
                continue
            colors |= cbit[j]
            touched |= vmask[j]
        return min(_popcount(colors), _popcount(touched) // 2)

    def search(start: int, used_v: int, used_c: int, chosen: List[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if len(chosen) > len(best):
            best = list(chosen)
        j = start
        while j < m and (vmask[j] & used_v or cbit[j] & used_c):
            j += 1
        if j == m:
            return
        if len(chosen) + bound(j, used_v, used_c) <= len(best):
            return
        chosen.append(j)
        search(j + 1, used_v | vmask[j], used_c | cbit[j], chosen)
        chosen.pop()
        search(j + 1, used_v, used_c, chosen)

    search(0, 0, 0, [])
    matching = RainbowMatching.checked(graph, (usable[i] for i in best))
    logger.debug("oracle.mrbm edges=%d nodes=%d size=%d", m, nodes, matching.size)
    return SolveResult(matching=matching, method=SolveMethod.ORACLE, branch_count=nodes)


MisInput = Union[nx.Graph, AdjacencyLike]


def oracle_mis(
    graph: MisInput,
    cap: int = DEFAULT_ORACLE_CAP,
    allow_oversize: bool = False,
) -> Tuple[Hashable, ...]:
    """Exhaustive maximum independent set.

    Accepts a networkx graph (the answer uses its node labels, sorted) or
    adjacency sets over ``0..n-1`` such as a `ColorLineGraph`. Ties are
    broken towards the lexicographically smallest set in sorted node order.

    Raises
    ------
    SizeCapExceeded
        If the graph has more than ``cap`` vertices.
    """
    labels: Sequence[Hashable]
    if isinstance(graph, nx.Graph):
        labels = sorted(graph.nodes)
        index = {v: i for i, v in enumerate(labels)}
        adj: Sequence[Iterable[int]] = [
            [index[w] for w in graph.adj[v]] for v in labels
        ]
    else:
        adj = adjacency_sets(graph)
        labels = range(len(adj))
    n = len(adj)
    _check_cap("graph", n, cap, allow_oversize)

    # closed neighbourhoods as bitmasks
    closed = [(1 << v) | sum(1 << w for w in set(adj[v]) if w != v) for v in range(n)]
    best: List[int] = []

    def search(candidates: int, chosen: List[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if not candidates or len(chosen) + _popcount(candidates) <= len(best):
            return
        v = (candidates & -candidates).bit_length() - 1
        chosen.append(v)
        search(candidates & ~closed[v], chosen)
        chosen.pop()
        search(candidates & ~(1 << v), chosen)

    search((1 << n) - 1, [])
    logger.debug("oracle.mis vertices=%d size=%d", n, len(best))
    return tuple(labels[i] for i in best)
