"""
Validation utilities for candidate matchings.

Checks the two rainbow-matching invariants (vertex-disjoint, color-distinct)
and reports every violating pair instead of stopping at the first one.
"""

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Set, Tuple

from ..schemas.errors import PreconditionError
from .models import ColoredGraph, SolutionVerdict, Violation, ViolationKind

logger = logging.getLogger(__name__)


def validate_solution(graph: ColoredGraph, edge_ids: Iterable[int]) -> SolutionVerdict:
    """
    Check that `edge_ids` is a rainbow matching of `graph`.

    Parameters
    ----------
    graph : ColoredGraph
        Instance the edge ids refer to
    edge_ids : Iterable[int]
        Candidate edge set (duplicates are ignored)

    Returns
    -------
    SolutionVerdict
        ``ok`` when both invariants hold, otherwise every violating pair
        tagged shared-vertex or shared-color, sorted by (first, second, kind)

    Raises
    ------
    PreconditionError
        If an edge id is out of range

    Examples
    --------
    >>> g = parse_instance("p cgraph 4 3\\ne 1 2 a\\ne 2 3 b\\ne 3 4 c\\n")
    >>> validate_solution(g, {0, 2}).ok
    True
    """
    ids = sorted(set(edge_ids))
    for eid in ids:
        if not 0 <= eid < graph.edge_count:
            raise PreconditionError(
                f"edge id {eid} out of range", {"edge_count": graph.edge_count}
            )

    by_vertex: Dict[int, List[int]] = defaultdict(list)
    by_color: Dict[int, List[int]] = defaultdict(list)
    for eid in ids:
        u, v, c = graph.edges[eid]
        by_vertex[u].append(eid)
        by_vertex[v].append(eid)
        by_color[c].append(eid)

    found: Set[Tuple[int, int, ViolationKind]] = set()
    for groups, kind in (
        (by_vertex, ViolationKind.SHARED_VERTEX),
        (by_color, ViolationKind.SHARED_COLOR),
    ):
        for members in groups.values():
            for i, first in enumerate(members):
                for second in members[i + 1 :]:
                    found.add((first, second, kind))

    violations = tuple(
        Violation(kind, first, second)
        for first, second, kind in sorted(found, key=lambda t: (t[0], t[1], t[2].value))
    )
    if violations:
        logger.debug("solution.invalid violations=%d", len(violations))
    return SolutionVerdict(violations)


def is_rainbow_matching(graph: ColoredGraph, edge_ids: Iterable[int]) -> bool:
    """Shorthand for ``validate_solution(graph, edge_ids).ok``."""
    return validate_solution(graph, edge_ids).ok
