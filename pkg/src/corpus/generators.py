"""Seeded random instances per solver class, and small exhaustive families.

Every generator draws from one `random.Random` so a seed fixes the whole
corpus. Components are built on local vertex ids, shifted into place, and the
final vertex ids are shuffled so that structure is not visible in the
numbering.
"""

from __future__ import annotations

import logging
import random
from enum import Enum
from itertools import combinations_with_replacement, product
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

import networkx as nx

from ..domain.models import ColoredGraph
from ..schemas.errors import PreconditionError

logger = logging.getLogger(__name__)

LocalEdges = List[Tuple[int, int]]


class CorpusClass(str, Enum):
    STAR_TRIANGLE = "star-triangle"
    P7_TREE = "p7tree"
    P7_FOREST = "p7forest"
    P5_FOREST = "p5forest"
    RANDOM = "random"
    PROPER = "proper"


def _star(rng: random.Random, max_leaves: int = 4) -> Tuple[int, LocalEdges]:
    leaves = rng.randint(1, max_leaves)
    return leaves + 1, [(0, i) for i in range(1, leaves + 1)]


def _triangle(rng: random.Random) -> Tuple[int, LocalEdges]:
    return 3, [(0, 1), (1, 2), (0, 2)]


def _double_star(rng: random.Random) -> Tuple[int, LocalEdges]:
    # centers 0 and 1, both with at least one leaf, so a P4 is present
    left, right = rng.randint(1, 3), rng.randint(1, 3)
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(left)]
    edges += [(1, 2 + left + i) for i in range(right)]
    return 2 + left + right, edges


def _p7_free_tree(rng: random.Random) -> Tuple[int, LocalEdges]:
    """Central edge ``01`` whose ends carry stars hung by their centers."""
    edges = [(0, 1)]
    n = 2
    for hub in (0, 1):
        for _ in range(rng.randint(0, 3)):
            center = n
            edges.append((hub, center))
            n += 1
            for _ in range(rng.randint(0, 3)):
                edges.append((center, n))
                n += 1
    return n, edges


def _assemble(
    rng: random.Random,
    pieces: Sequence[Tuple[int, LocalEdges]],
) -> Tuple[int, LocalEdges]:
    edges: LocalEdges = []
    offset = 0
    for n, local in pieces:
        edges.extend((u + offset, v + offset) for u, v in local)
        offset += n
    relabel = list(range(1, offset + 1))
    rng.shuffle(relabel)
    return offset, [(relabel[u], relabel[v]) for u, v in edges]


def _fill(
    rng: random.Random,
    max_edges: int,
    first: Sequence[Callable[[random.Random], Tuple[int, LocalEdges]]],
    filler: Callable[[random.Random], Tuple[int, LocalEdges]],
) -> List[Tuple[int, LocalEdges]]:
    """Add the `first` pieces, then `filler` pieces, while edges fit."""
    pieces: List[Tuple[int, LocalEdges]] = []
    used = 0
    budget = rng.randint(1, max_edges)
    builders = list(first) + [filler] * max_edges
    for build in builders:
        piece = build(rng)
        if used + len(piece[1]) > budget:
            continue
        pieces.append(piece)
        used += len(piece[1])
    return pieces


def _random_colors(rng: random.Random, edges: LocalEdges) -> List[str]:
    palette = rng.randint(1, max(1, len(edges)))
    return [f"c{rng.randrange(palette)}" for _ in edges]


def _proper_colors(rng: random.Random, n: int, edges: LocalEdges) -> List[str]:
    degree: Dict[int, int] = {}
    for u, v in edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    # 2*maxdeg - 1 colors always leave a free one at each edge
    palette = max(1, 2 * max(degree.values(), default=1) - 1)
    used: Dict[int, set] = {v: set() for v in range(1, n + 1)}
    labels: List[str] = []
    for u, v in edges:
        free = [c for c in range(palette) if c not in used[u] and c not in used[v]]
        color = rng.choice(free)
        used[u].add(color)
        used[v].add(color)
        labels.append(f"c{color}")
    return labels


def random_instance(
    kind: CorpusClass, rng: random.Random, max_edges: int = 25
) -> ColoredGraph:
    """Draw one instance of `kind` with at most `max_edges` edges.

    ``p7forest`` has at most four components containing a P4 and
    ``p5forest`` at most six, matching the parameter ranges the FPT and
    branching solvers are exercised on.
    """
    if max_edges < 1:
        raise PreconditionError("max_edges must be positive", {"max_edges": max_edges})
    if kind == CorpusClass.STAR_TRIANGLE:
        pieces = _fill(rng, max_edges, (), lambda r: r.choice((_star, _triangle))(r))
    elif kind == CorpusClass.P7_TREE:
        pieces = [_p7_free_tree(rng)]
        while len(pieces[0][1]) > max_edges:
            pieces = [_p7_free_tree(rng)]
    elif kind == CorpusClass.P7_FOREST:
        trees = [_p7_free_tree] * rng.randint(1, 4)
        pieces = _fill(rng, max_edges, trees, _star)
    elif kind == CorpusClass.P5_FOREST:
        doubles = [_double_star] * rng.randint(1, 6)
        pieces = _fill(rng, max_edges, doubles, _star)
    else:
        n = rng.randint(2, 10)
        graph = nx.gnp_random_graph(n, rng.uniform(0.2, 0.7), seed=rng.randrange(2**32))
        local = sorted(graph.edges)[:max_edges]
        pieces = [(n, local)]

    n, edges = _assemble(rng, pieces)
    if kind == CorpusClass.PROPER:
        labels = _proper_colors(rng, n, edges)
    else:
        labels = _random_colors(rng, edges)
    return ColoredGraph.from_edges(n, ((u, v, c) for (u, v), c in zip(edges, labels)))


def generate_corpus(
    kind: CorpusClass, count: int, seed: int, max_edges: int = 25
) -> List[ColoredGraph]:
    """`count` instances of `kind` drawn from ``random.Random(seed)``."""
    rng = random.Random(seed)
    corpus = [random_instance(kind, rng, max_edges) for _ in range(count)]
    logger.debug(
        "corpus.generated kind=%s count=%d seed=%d", kind.value, count, seed
    )
    return corpus


def _partitions(total: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def _colorings(length: int, max_colors: int) -> Iterator[Tuple[int, ...]]:
    """Color sequences up to renaming: each new color is the next unused id."""
    for seq in product(range(max_colors), repeat=length):
        seen = -1
        ok = True
        for c in seq:
            if c > seen + 1:
                ok = False
                break
            seen = max(seen, c)
        if ok:
            yield seq


def _forests(edges: int) -> Iterator[Tuple[int, LocalEdges]]:
    trees: Dict[int, List[nx.Graph]] = {
        size: list(nx.nonisomorphic_trees(size + 1)) for size in range(1, edges + 1)
    }
    for parts in _partitions(edges, edges):
        groups: Dict[int, int] = {}
        for p in parts:
            groups[p] = groups.get(p, 0) + 1
        choices = [
            list(combinations_with_replacement(trees[size], times))
            for size, times in sorted(groups.items(), reverse=True)
        ]
        for pick in product(*choices):
            local: LocalEdges = []
            offset = 0
            for group in pick:
                for tree in group:
                    local.extend((u + offset, v + offset) for u, v in tree.edges)
                    offset += tree.number_of_nodes()
            yield offset, local


def exhaustive_forests(
    max_edges: int = 8, max_colors: int = 3
) -> Iterator[ColoredGraph]:
    """Every forest without isolated vertices on at most `max_edges` edges,
    one per isomorphism class of the uncolored forest, under every coloring
    with at most `max_colors` colors up to renaming of colors.
    """
    yield ColoredGraph.from_edges(0, ())
    for m in range(1, max_edges + 1):
        for n, local in _forests(m):
            ordered = sorted((min(u, v) + 1, max(u, v) + 1) for u, v in local)
            for coloring in _colorings(m, max_colors):
                yield ColoredGraph.from_edges(
                    n, ((u, v, f"c{c}") for (u, v), c in zip(ordered, coloring))
                )
