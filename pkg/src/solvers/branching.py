"""
Branch evaluation for the enumerating exact solvers.

Branches are drawn lazily from an iterator in fixed-size chunks. Each chunk is
first filtered against the incumbent: a branch survives when its bound is at
least the incumbent size, since an equal-size answer may still win the
lexicographic tie-break. The surviving branches are solved (on a thread pool
when more than one thread is configured) and folded into the incumbent in
branch order. The incumbent only changes between chunks and the fold order is
fixed, so the outcome and the counters are the same for every thread count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import islice, repeat
from typing import Callable, Generic, Iterable, List, Optional, Sequence, Tuple, TypeVar

logger = logging.getLogger(__name__)

B = TypeVar("B")

CHUNK_SIZE = 64


def better(candidate: Sequence[int], incumbent: Optional[Sequence[int]]) -> bool:
    """Order on solutions: larger first, then lexicographically smaller."""
    if incumbent is None:
        return True
    if len(candidate) != len(incumbent):
        return len(candidate) > len(incumbent)
    return tuple(candidate) < tuple(incumbent)


@dataclass
class BranchOutcome:
    """
    Aggregate of a branch enumeration.

    Attributes
    ----------
    best : Tuple[int, ...]
        Best solution found (sorted edge ids)
    evaluated : int
        Branches that were actually solved
    pruned : int
        Branches skipped because their bound could not beat the incumbent
    """

    best: Tuple[int, ...] = field(default_factory=tuple)
    evaluated: int = 0
    pruned: int = 0


class BranchRunner(Generic[B]):
    """
    Solve branches and keep the best answer.

    Parameters
    ----------
    threads : int
        Worker threads; 1 evaluates inline
    chunk_size : int
        Branches per evaluation round
    """

    def __init__(self, threads: int = 1, chunk_size: int = CHUNK_SIZE):
        if threads < 1:
            raise ValueError("threads must be >= 1")
        self.threads = threads
        self.chunk_size = chunk_size
        self.outcome = BranchOutcome()
        self._has_incumbent = False

    @property
    def incumbent_size(self) -> int:
        return len(self.outcome.best) if self._has_incumbent else -1

    def run(
        self,
        branches: Iterable[B],
        bound: Callable[[B], int],
        evaluate: Callable[[B, int], Optional[Tuple[int, ...]]],
    ) -> BranchOutcome:
        """
        Evaluate `branches` and return the aggregate.

        Parameters
        ----------
        branches : Iterable[B]
            Branch descriptions, consumed lazily; a generator may consult
            `incumbent_size` to skip hopeless subtrees.
        bound : Callable[[B], int]
            Upper bound on the size any solution of the branch can reach
        evaluate : Callable[[B, int], Optional[Tuple[int, ...]]]
            Solves one branch given the incumbent size at the start of its
            chunk; returns sorted edge ids, or None when the branch optimum
            is below that size
        """
        it = iter(branches)
        pool = (
            ThreadPoolExecutor(max_workers=self.threads) if self.threads > 1 else None
        )
        try:
            while True:
                chunk = list(islice(it, self.chunk_size))
                if not chunk:
                    break
                floor = self.incumbent_size
                alive: List[B] = []
                for branch in chunk:
                    if bound(branch) < floor:
                        self.outcome.pruned += 1
                    else:
                        alive.append(branch)
                if pool is not None:
                    results = list(pool.map(evaluate, alive, repeat(floor)))
                else:
                    results = [evaluate(branch, floor) for branch in alive]
                self.outcome.evaluated += len(alive)
                for result in results:
                    if result is None:
                        continue
                    incumbent = self.outcome.best if self._has_incumbent else None
                    if better(result, incumbent):
                        self.outcome.best = tuple(result)
                        self._has_incumbent = True
        finally:
            if pool is not None:
                pool.shutdown(wait=True)
        logger.debug(
            "branches.done evaluated=%d pruned=%d best=%d",
            self.outcome.evaluated,
            self.outcome.pruned,
            len(self.outcome.best),
        )
        return self.outcome
