"""Result and option types shared by the exact solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, Iterator, Optional, Tuple

from ..domain.models import ColoredGraph, RainbowMatching
from ..schemas.errors import PreconditionError

DEFAULT_ORACLE_CAP = 30


class SolveMethod(str, Enum):
    """Which algorithm produced a result."""

    ORACLE = "oracle"
    STAR_TRIANGLE = "star-triangle"
    P7_TREE = "p7-tree"
    P7_FOREST = "p7-forest"
    P5_FPT = "p5-fpt"


@dataclass(frozen=True)
class BannedColorSet:
    """Colors a residual subproblem may not use."""

    colors: FrozenSet[int] = frozenset()

    @classmethod
    def of(cls, graph: ColoredGraph, colors: Iterable[int] = ()) -> "BannedColorSet":
        chosen = frozenset(colors)
        bad = [c for c in chosen if not 0 <= c < graph.color_count]
        if bad:
            raise PreconditionError(
                "banned colors outside the instance", {"colors": sorted(bad)}
            )
        return cls(chosen)

    @classmethod
    def coerce(
        cls, graph: ColoredGraph, banned: "BannedColorSet | Iterable[int] | None"
    ) -> "BannedColorSet":
        if banned is None:
            return cls()
        if isinstance(banned, BannedColorSet):
            return cls.of(graph, banned.colors)
        return cls.of(graph, banned)

    def __contains__(self, color: object) -> bool:
        return color in self.colors

    def with_colors(self, colors: Iterable[int]) -> "BannedColorSet":
        return BannedColorSet(self.colors | frozenset(colors))


@dataclass(frozen=True)
class SolveOptions:
    """Knobs shared by every exact solver.

    Attributes
    ----------
    oracle_cap : int
        Largest edge count the brute-force oracles accept.
    allow_oversize : bool
        Run the oracle above the cap anyway (logged as a warning).
    threads : int
        Worker threads for branch evaluation; results do not depend on it.
    p5_kernel : Optional[bool]
        Per-star pruning in the P5-free solver; None selects automatically.
    """

    oracle_cap: int = DEFAULT_ORACLE_CAP
    allow_oversize: bool = False
    threads: int = 1
    p5_kernel: Optional[bool] = None


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact solver.

    ``branch_count`` counts the enumeration branches actually solved and
    ``pruned_branches`` those skipped by the incumbent bound.
    """

    matching: RainbowMatching
    method: SolveMethod
    branch_count: int = 1
    pruned_branches: int = 0
    certificate_of_optimality: bool = True
    dispatched: bool = False

    @property
    def size(self) -> int:
        return self.matching.size

    def report_items(self) -> Iterator[Tuple[str, object]]:
        yield "method", self.method
        yield "dispatch", "auto" if self.dispatched else "explicit"
        yield "optimum", self.size
        yield "branch_count", self.branch_count
        yield "pruned_branches", self.pruned_branches
        yield "certificate_of_optimality", self.certificate_of_optimality
        yield "edges", list(self.matching.edge_ids)


@dataclass(frozen=True)
class Branch:
    """One branch of a branching reduction.

    The branch instance is the spanning subgraph on ``active_edges`` with
    ``banned`` colors unusable; ``fixed`` edges are already committed to the
    matching.
    """

    active_edges: FrozenSet[int]
    banned: BannedColorSet
    fixed: Tuple[int, ...] = field(default_factory=tuple)

    def usable_edges(self, graph: ColoredGraph) -> Tuple[int, ...]:
        return tuple(
            e for e in sorted(self.active_edges) if graph.color(e) not in self.banned
        )

    def materialize(self, graph: ColoredGraph) -> Tuple[ColoredGraph, Tuple[int, ...]]:
        """Standalone instance for this branch (banned-colored edges dropped)."""
        return graph.restrict(self.usable_edges(graph))
