"""Greedy plus bounded-swap local search on the color-line graph.

Color-line graphs are K_{1,4}-free, so any maximal independent set is within
a factor 3 of the optimum, and independent sets that admit no improving swap
of at most ``t`` vertices approach a factor 2/3 as ``t`` grows. Rainbow
matchings are exactly the independent sets of the color-line graph, which is
how `approx_mrbm` turns the search into a matching.

Swap search order is canonical: subsets ``A`` of the current solution by
increasing size and then lexicographically, and for each ``A`` the
lexicographically first independent ``B`` of size ``|A| + 1`` among the
outside vertices whose solution-neighbors all lie in ``A``. The first improving
swap is applied and the scan restarts. Because smaller swaps are always tried
first, a larger ``t`` follows the same trajectory as a smaller one until the
smaller one stalls, so the result size never decreases with ``t``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import (
    AbstractSet,
    Dict,
    FrozenSet,
    Iterator,
    List,
    Literal,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import structlog
from pydantic import BaseModel, ConfigDict, Field

from ..domain.color_line import (
    AdjacencyLike,
    adjacency_sets,
    build_color_line,
    independent_subset,
    lift_independent_set,
)
from ..domain.models import ColoredGraph, RainbowMatching

logger = logging.getLogger(__name__)
events = structlog.get_logger(__name__)

FLOOR_RATIO = Fraction(1, 3)


class LocalSearchConfig(BaseModel):
    """Parameters of the swap local search.

    Attributes
    ----------
    swap_size : int
        Largest number of solution vertices removed by one swap (0 keeps the
        greedy solution).
    max_passes : Optional[int]
        Stop after this many scans; None runs to local optimality.
    deterministic : Literal[True]
        Candidate order is always canonical; there is no random mode.
    """

    model_config = ConfigDict(frozen=True)

    swap_size: int = Field(2, ge=0)
    max_passes: Optional[int] = Field(None, ge=1)
    deterministic: Literal[True] = True


@dataclass
class SearchCounters:
    passes: int = 0
    swaps_applied: int = 0
    candidates_examined: int = 0


def greedy_maximal_is(adjacency: AdjacencyLike) -> Tuple[int, ...]:
    """Maximal independent set by scanning vertices in increasing order.

    Examples
    --------
    >>> greedy_maximal_is([{1}, {0, 2}, {1}])
    (0, 2)
    """
    adj = adjacency_sets(adjacency)
    chosen: List[int] = []
    blocked: Set[int] = set()
    for v in range(len(adj)):
        if v in blocked:
            continue
        chosen.append(v)
        blocked.add(v)
        blocked.update(adj[v])
    return tuple(chosen)


def _solution_neighbors(
    adj: Sequence[AbstractSet[int]], solution: AbstractSet[int]
) -> Dict[FrozenSet[int], List[int]]:
    """Group outside vertices by their set of neighbors inside `solution`."""
    groups: Dict[FrozenSet[int], List[int]] = {}
    for v in range(len(adj)):
        if v in solution:
            continue
        key = frozenset(adj[v] & solution)
        groups.setdefault(key, []).append(v)
    return groups


def _subsets(items: Tuple[int, ...]) -> Iterator[FrozenSet[int]]:
    for size in range(len(items) + 1):
        for combo in combinations(items, size):
            yield frozenset(combo)


def find_improving_swap(
    adj: Sequence[AbstractSet[int]],
    solution: AbstractSet[int],
    swap_size: int,
    counters: Optional[SearchCounters] = None,
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Return the canonically first improving swap ``(A, B)`` or None."""
    groups = _solution_neighbors(adj, solution)
    ordered = tuple(sorted(solution))
    for size in range(min(swap_size, len(ordered)) + 1):
        for removed in combinations(ordered, size):
            if counters is not None:
                counters.candidates_examined += 1
            pool: List[int] = []
            for key in _subsets(removed):
                pool.extend(groups.get(key, ()))
            if len(pool) < size + 1:
                continue
            added = independent_subset(sorted(pool), size + 1, adj)
            if added is not None:
                return removed, added
    return None


def local_search_mis(
    adjacency: AdjacencyLike,
    config: LocalSearchConfig = LocalSearchConfig(),
    start: Optional[Sequence[int]] = None,
    counters: Optional[SearchCounters] = None,
) -> Tuple[int, ...]:
    """Improve an independent set with swaps of at most ``swap_size`` vertices.

    Parameters
    ----------
    adjacency : AdjacencyLike
        Graph over ``0..n-1``.
    config : LocalSearchConfig
        Swap size and pass limit.
    start : sequence of int, optional
        Initial independent set; defaults to `greedy_maximal_is`.
    counters : SearchCounters, optional
        Updated in place with passes, applied swaps and examined subsets.

    Returns
    -------
    tuple of int
        Sorted independent set with no improving swap (unless the pass limit
        was hit first).
    """
    adj = adjacency_sets(adjacency)
    counters = counters if counters is not None else SearchCounters()
    solution: Set[int] = set(greedy_maximal_is(adj) if start is None else start)
    while config.max_passes is None or counters.passes < config.max_passes:
        counters.passes += 1
        swap = find_improving_swap(adj, solution, config.swap_size, counters)
        events.debug(
            "local_search.pass",
            passes=counters.passes,
            size=len(solution),
            improved=swap is not None,
        )
        if swap is None:
            break
        removed, added = swap
        solution.difference_update(removed)
        solution.update(added)
        counters.swaps_applied += 1
    return tuple(sorted(solution))


@dataclass(frozen=True)
class ApproxResult:
    """Outcome of `approx_mrbm` with the guarantees it can state.

    ``opt_upper_bound`` holds for every instance because the final set is
    maximal in a K_{1,4}-free graph.
    """

    matching: RainbowMatching
    swap_size: int
    passes: int
    swaps_applied: int
    candidates_examined: int

    @property
    def final_size(self) -> int:
        return self.matching.size

    @property
    def floor_ratio(self) -> Fraction:
        return FLOOR_RATIO

    @property
    def opt_upper_bound(self) -> int:
        return 3 * self.final_size

    def floor_bound(self, optimum: Optional[int] = None) -> int:
        """Smallest size the guarantee allows.

        Without a known optimum the guarantee is applied to
        ``opt_upper_bound``, which the solution itself certifies.
        """
        bound = self.opt_upper_bound if optimum is None else optimum
        return math.ceil(bound * self.floor_ratio)

    def observed_ratio(self, optimum: int) -> Optional[Fraction]:
        return Fraction(self.final_size, optimum) if optimum else None

    def report_items(self, optimum: Optional[int] = None) -> Iterator[tuple]:
        yield "method", "local-search"
        yield "swap_size", self.swap_size
        yield "passes", self.passes
        yield "swaps_applied", self.swaps_applied
        yield "candidates_examined", self.candidates_examined
        yield "final_size", self.final_size
        yield "floor_ratio", str(self.floor_ratio)
        yield "opt_upper_bound", self.opt_upper_bound
        yield "floor_bound", self.floor_bound(optimum)
        if optimum is not None:
            yield "optimum", optimum
            ratio = self.observed_ratio(optimum)
            yield "observed_ratio", str(ratio) if ratio is not None else None
        yield "edges", list(self.matching.edge_ids)


def approx_mrbm(
    graph: ColoredGraph, config: LocalSearchConfig = LocalSearchConfig()
) -> ApproxResult:
    """Approximate a maximum rainbow matching through the color-line graph.

    Examples
    --------
    >>> g = parse_instance("p cgraph 2 1\\ne 1 2 a\\n")
    >>> approx_mrbm(g).matching.edge_ids
    (0,)
    """
    cl = build_color_line(graph)
    counters = SearchCounters()
    vertices = local_search_mis(cl, config, counters=counters)
    matching = lift_independent_set(cl, vertices)
    logger.debug(
        "approx.done size=%d passes=%d swaps=%d",
        matching.size,
        counters.passes,
        counters.swaps_applied,
    )
    return ApproxResult(
        matching=matching,
        swap_size=config.swap_size,
        passes=counters.passes,
        swaps_applied=counters.swaps_applied,
        candidates_examined=counters.candidates_examined,
    )
