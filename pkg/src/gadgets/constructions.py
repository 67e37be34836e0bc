"""Reduction gadgets that turn cubic sources into rainbow matching instances.

Each generator is deterministic (ties go to the lowest id), returns the new
instance together with a `GadgetCertificate`, and accepts any input in its
documented class, not only outputs of the previous stage. Vertices of every
output are numbered consecutively along the structure being built.

Stages and their inputs::

    pec       cubic source      -> 2-regular, properly colored, colors x2
    complete  pec output        -> complete graph, one extra color
    path      pec output        -> single properly colored path
    lf-p5     pec output        -> linear forest of P4s
    bip-p4    lf-p5 output      -> disjoint C4s
    lf-p6     pec output        -> linear forest of P4s and P5s
    tree-p8   lf-p6 output      -> tree with no P8
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..domain.models import ColoredGraph, ComponentKind
from ..domain.structure import analyze
from ..schemas.errors import InvariantViolation, PreconditionError
from ..solvers.models import DEFAULT_ORACLE_CAP
from ..utils.cache import Cache
from .catalog import CubicSource, find_perfect_matching, validate_cubic_source
from .certificates import (
    CertificateVerdict,
    Claim,
    GadgetCertificate,
    SourceKind,
    cl_isomorphic,
    verify_certificate,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GadgetOutput:
    graph: ColoredGraph
    certificate: GadgetCertificate


class ColorNamer:
    """Hands out color labels not yet used by an instance."""

    def __init__(self, taken: Iterable[str]):
        self._taken = set(taken)

    def fresh(self, stem: str) -> str:
        name, k = stem, 1
        while name in self._taken:
            k += 1
            name = f"{stem}_{k}"
        self._taken.add(name)
        return name


def _trace_cycles(
    vertex_count: int, adjacency: Mapping[int, Sequence[int]]
) -> List[List[int]]:
    for v in range(1, vertex_count + 1):
        if len(adjacency[v]) != 2:
            raise PreconditionError(
                "graph is not a disjoint union of cycles",
                {"vertex": v, "degree": len(adjacency[v])},
            )
    seen: set = set()
    cycles: List[List[int]] = []
    for start in range(1, vertex_count + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        prev, cur = start, min(adjacency[start])
        while cur != start:
            cycle.append(cur)
            seen.add(cur)
            a, b = adjacency[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(cycle)
    return cycles


def cycles_of(graph: ColoredGraph) -> List[List[int]]:
    """Cycles of a 2-regular graph, each from its lowest vertex toward the
    lower neighbor, ordered by lowest vertex.

    Raises
    ------
    PreconditionError
        If some vertex does not have degree 2.
    """
    adjacency = {v: graph.adjacency[v] for v in range(1, graph.vertex_count + 1)}
    return _trace_cycles(graph.vertex_count, adjacency)


def _require_proper(graph: ColoredGraph) -> None:
    for v, eids in enumerate(graph.incidence):
        colors = [graph.color(e) for e in eids]
        if len(colors) != len(set(colors)):
            raise PreconditionError("coloring is not proper", {"vertex": v})


def to_2regular_pec(
    source: CubicSource, matching: Optional[Sequence[Tuple[int, int]]] = None
) -> GadgetOutput:
    """2-regular properly colored graph whose color-line graph is `source`.

    Removing a perfect matching ``M`` from the source leaves disjoint cycles.
    Each cycle ``g_0 .. g_{r-1}`` becomes a cycle of the output in which edge
    ``f_i`` stands for vertex ``g_i``; the two edges standing for the ends of
    an ``M``-edge share a fresh color. Incidence in the output then mirrors
    cycle adjacency and equal colors mirror ``M``.

    Raises
    ------
    PreconditionError
        If `source` is not a valid cubic source.
    InvariantViolation
        If the color-line graph of the output is not isomorphic to `source`
        under the recorded back map.
    """
    verdict = validate_cubic_source(source)
    if not verdict.ok:
        problem = verdict.problems[0]
        raise PreconditionError(
            f"source is not a valid cubic graph ({problem.kind.value})",
            {"witness": list(problem.witness)},
        )
    pairs = tuple(matching) if matching is not None else find_perfect_matching(source)
    in_matching = set(pairs)
    rest: Dict[int, List[int]] = {v: [] for v in range(1, source.vertex_count + 1)}
    for u, v in source.edges:
        if (u, v) not in in_matching:
            rest[u].append(v)
            rest[v].append(u)
    cycles = _trace_cycles(source.vertex_count, {v: sorted(n) for v, n in rest.items()})

    stands_for: Dict[int, Tuple[int, int]] = {}
    next_vertex = 1
    for cycle in cycles:
        r = len(cycle)
        for i, g in enumerate(cycle):
            stands_for[g] = (next_vertex + i, next_vertex + (i + 1) % r)
        next_vertex += r

    label: Dict[int, str] = {}
    for idx, (g, h) in enumerate(pairs, start=1):
        label[g] = label[h] = f"m{idx}"
    out = ColoredGraph.from_edges(
        next_vertex - 1, ((a, b, label[g]) for g, (a, b) in sorted(stands_for.items()))
    )
    back_map = {out.edge_id(a, b): f"vertex:{g}" for g, (a, b) in stands_for.items()}
    if not cl_isomorphic(out, source, back_map):
        raise InvariantViolation(
            "color-line graph of the 2-regular output differs from the source",
            {"source": source.name},
        )
    cert = GadgetCertificate(
        stage="pec",
        source=source.name,
        source_kind=SourceKind.CUBIC_MIS,
        offset=0,
        offset_formula="MRBM(H) = MIS(G)",
        back_map=back_map,
        cycle_count=len(cycles),
        odd_cycle_count=sum(len(c) % 2 for c in cycles),
        claims=[
            Claim.TWO_REGULAR,
            Claim.PROPER,
            Claim.COLORS_EXACTLY_TWICE,
            Claim.CL_ISOMORPHIC,
        ],
    )
    return GadgetOutput(out, cert)


def to_complete(h: ColoredGraph, source_name: str = "pec") -> GadgetOutput:
    """Add two vertices and every missing edge, all in one fresh color.

    At most one edge of the new color fits in a rainbow matching, and the
    two new vertices always leave room for it, so the optimum grows by one.
    """
    n = h.vertex_count + 2
    fresh = ColorNamer(h.color_names).fresh("k")
    triples = [(u, v, h.label(e)) for e, (u, v, _) in enumerate(h.edges)]
    triples.extend(
        (u, v, fresh)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if not (v <= h.vertex_count and h.has_edge(u, v))
    )
    out = ColoredGraph.from_edges(n, triples)
    back_map = {
        e: (f"edge:{h.edge_id(u, v)}" if v <= h.vertex_count and h.has_edge(u, v)
            else "fresh")
        for e, (u, v, _) in enumerate(out.edges)
    }
    cert = GadgetCertificate(
        stage="complete",
        source=source_name,
        source_kind=SourceKind.PEC_2REGULAR_MRBM,
        offset=1,
        offset_formula="MRBM(H') = MRBM(H) + 1",
        back_map=back_map,
        claims=[Claim.COMPLETE, Claim.ONE_HEAVY_COLOR],
    )
    return GadgetOutput(out, cert)


def _path_graph(
    steps: Sequence[Tuple[str, str]]
) -> Tuple[ColoredGraph, Dict[int, str]]:
    """Path on ``len(steps)`` edges; step ``i`` is edge ``(i+1, i+2)``."""
    out = ColoredGraph.from_edges(
        len(steps) + 1, ((i + 1, i + 2, lab) for i, (lab, _) in enumerate(steps))
    )
    return out, {i: origin for i, (_, origin) in enumerate(steps)}


def to_path(h: ColoredGraph, source_name: str = "pec") -> GadgetOutput:
    """Cut every cycle into a path and string the paths together.

    Each cycle is cut at its lowest vertex ``v`` and both new ends get a
    pendant edge in a fresh color owned by ``v``. Consecutive paths are joined
    by connector edges sharing one fresh color, and a five-edge tail colored
    connector/second/connector/second/connector closes the far end. The result
    has ``|E(h)| + 3c + 4`` edges and an optimum larger by ``c + 2``.

    Raises
    ------
    PreconditionError
        If `h` is not a properly colored disjoint union of cycles.
    """
    cycles = cycles_of(h)
    _require_proper(h)
    namer = ColorNamer(h.color_names)
    link = namer.fresh("1")
    second = namer.fresh("2")
    steps: List[Tuple[str, str]] = []
    for k, cycle in enumerate(cycles):
        v = cycle[0]
        owned = namer.fresh(f"v{v}")
        if k:
            steps.append((link, "fresh"))
        steps.append((owned, f"vertex:{v}"))
        for i, a in enumerate(cycle):
            e = h.edge_id(a, cycle[(i + 1) % len(cycle)])
            steps.append((h.label(e), f"edge:{e}"))
        steps.append((owned, f"vertex:{v}"))
    steps.extend((lab, "fresh") for lab in (link, second, link, second, link))
    out, back_map = _path_graph(steps)
    c = len(cycles)
    cert = GadgetCertificate(
        stage="path",
        source=source_name,
        source_kind=SourceKind.PEC_2REGULAR_MRBM,
        offset=c + 2,
        offset_formula="MRBM(P) = MRBM(H) + c + 2",
        back_map=back_map,
        cycle_count=c,
        odd_cycle_count=sum(len(cy) % 2 for cy in cycles),
        claims=[Claim.PATH, Claim.PROPER],
    )
    logger.debug("gadgets.path cycles=%d edges=%d", c, out.edge_count)
    return GadgetOutput(out, cert)


def to_lf_p5(h: ColoredGraph, source_name: str = "pec") -> GadgetOutput:
    """One three-edge path per edge ``vw`` of `h`, colored ``v``, ``vw``, ``w``.

    Every vertex of `h` owns a fresh color that appears on the outer edges of
    the paths for its two incident edges. The optimum grows by ``|V(h)|``.

    Raises
    ------
    PreconditionError
        If `h` is not a properly colored disjoint union of cycles.
    """
    cycles_of(h)
    _require_proper(h)
    namer = ColorNamer(h.color_names)
    owned = {v: namer.fresh(f"v{v}") for v in range(1, h.vertex_count + 1)}
    triples: List[Tuple[int, int, str]] = []
    back_map: Dict[int, str] = {}
    for e, (u, v, _) in enumerate(h.edges):
        base = 4 * e
        triples.append((base + 1, base + 2, owned[u]))
        triples.append((base + 2, base + 3, h.label(e)))
        triples.append((base + 3, base + 4, owned[v]))
        back_map[3 * e] = f"vertex:{u}"
        back_map[3 * e + 1] = f"edge:{e}"
        back_map[3 * e + 2] = f"vertex:{v}"
    out = ColoredGraph.from_edges(4 * h.edge_count, triples)
    cert = GadgetCertificate(
        stage="lf-p5",
        source=source_name,
        source_kind=SourceKind.PEC_2REGULAR_MRBM,
        offset=h.vertex_count,
        offset_formula="MRBM(L) = MRBM(H) + |V(H)|",
        back_map=back_map,
        claims=[
            Claim.LINEAR_FOREST,
            Claim.P5_FREE,
            Claim.PROPER,
            Claim.COLORS_AT_MOST_TWICE,
        ],
    )
    return GadgetOutput(out, cert)


def to_bip_p4(lf: ColoredGraph, source_name: str = "lf-p5") -> GadgetOutput:
    """Close every P4 into a C4 whose new edge repeats the middle color.

    Middle colors of an ``lf-p5`` output already occur twice, so they occur
    up to four times here.

    Raises
    ------
    PreconditionError
        If some component is not a P4.
    """
    report = analyze(lf)
    triples = [(u, v, lf.label(e)) for e, (u, v, _) in enumerate(lf.edges)]
    closing: Dict[Tuple[int, int], int] = {}
    for comp in report.components:
        path = comp.longest_path or []
        if comp.kind != ComponentKind.PATH or len(comp.vertices) != 4:
            raise PreconditionError(
                "component is not a P4", {"vertices": comp.vertices}
            )
        a, b, c, d = path
        middle = lf.edge_id(b, c)
        triples.append((a, d, lf.label(middle)))
        closing[(min(a, d), max(a, d))] = middle
    out = ColoredGraph.from_edges(lf.vertex_count, triples)
    back_map = {
        e: f"edge:{closing[(u, v)] if (u, v) in closing else lf.edge_id(u, v)}"
        for e, (u, v, _) in enumerate(out.edges)
    }
    cert = GadgetCertificate(
        stage="bip-p4",
        source=source_name,
        source_kind=SourceKind.LINEAR_FOREST_MRBM,
        offset=0,
        offset_formula="MRBM(B) = MRBM(L)",
        back_map=back_map,
        claims=[
            Claim.BIPARTITE,
            Claim.INDUCED_P4_FREE,
            Claim.PROPER,
            Claim.COLORS_AT_MOST_FOUR,
        ],
    )
    return GadgetOutput(out, cert)


def to_lf_p6(h: ColoredGraph, source_name: str = "pec") -> GadgetOutput:
    """Split every cycle at every other vertex, starting from its lowest.

    Each cut vertex ``v`` becomes two path ends, each with a pendant edge in
    a fresh color owned by ``v``. An even cycle of length ``r`` gives ``r/2``
    four-edge paths; an odd one gives ``(r-1)/2`` four-edge paths and one
    three-edge path. The optimum grows by the number of components,
    ``(|E(h)| + o) / 2`` with ``o`` odd cycles.

    Raises
    ------
    PreconditionError
        If `h` is not a properly colored disjoint union of cycles.
    """
    cycles = cycles_of(h)
    _require_proper(h)
    namer = ColorNamer(h.color_names)
    triples: List[Tuple[int, int, str]] = []
    origins: Dict[Tuple[int, int], str] = {}
    next_vertex = 1

    def add_path(steps: Sequence[Tuple[str, str]]) -> None:
        nonlocal next_vertex
        for i, (lab, origin) in enumerate(steps):
            u, v = next_vertex + i, next_vertex + i + 1
            triples.append((u, v, lab))
            origins[(u, v)] = origin
        next_vertex += len(steps) + 1

    components = 0
    for cycle in cycles:
        r = len(cycle)
        cuts = list(range(0, r, 2))
        owned = {cycle[p]: namer.fresh(f"v{cycle[p]}") for p in cuts}
        for j, start in enumerate(cuts):
            end = cuts[j + 1] if j + 1 < len(cuts) else r
            first, last = cycle[start], cycle[end % r]
            steps = [(owned[first], f"vertex:{first}")]
            for p in range(start, end):
                e = h.edge_id(cycle[p], cycle[(p + 1) % r])
                steps.append((h.label(e), f"edge:{e}"))
            steps.append((owned[last], f"vertex:{last}"))
            add_path(steps)
            components += 1

    out = ColoredGraph.from_edges(next_vertex - 1, triples)
    back_map = {e: origins[(u, v)] for e, (u, v, _) in enumerate(out.edges)}
    odd = sum(len(c) % 2 for c in cycles)
    if 2 * components != h.edge_count + odd:
        raise InvariantViolation(
            "component count differs from (|E| + o) / 2",
            {"components": components, "edges": h.edge_count, "odd": odd},
        )
    cert = GadgetCertificate(
        stage="lf-p6",
        source=source_name,
        source_kind=SourceKind.PEC_2REGULAR_MRBM,
        offset=components,
        offset_formula="MRBM(L) = MRBM(H) + (|E(H)| + o)/2",
        back_map=back_map,
        cycle_count=len(cycles),
        odd_cycle_count=odd,
        claims=[
            Claim.LINEAR_FOREST,
            Claim.P6_FREE,
            Claim.PROPER,
            Claim.COLORS_AT_MOST_TWICE,
        ],
    )
    return GadgetOutput(out, cert)


def to_tree_p8(lf: ColoredGraph, source_name: str = "lf-p6") -> GadgetOutput:
    """Join a hub to the middle of every path and hang a pendant on the hub.

    The hub is vertex ``n + 1`` and its pendant ``n + 2``. Each added edge
    gets its own fresh color; all of them meet the hub, so the optimum grows
    by exactly one.

    Raises
    ------
    PreconditionError
        If `lf` is not a linear forest or has a path on six or more vertices.
    """
    report = analyze(lf)
    if not report.is_linear_forest:
        raise PreconditionError("instance is not a linear forest")
    hub, pendant = lf.vertex_count + 1, lf.vertex_count + 2
    namer = ColorNamer(lf.color_names)
    triples = [(u, v, lf.label(e)) for e, (u, v, _) in enumerate(lf.edges)]
    for k, comp in enumerate(report.components, start=1):
        path = comp.longest_path or list(comp.vertices)
        if len(path) >= 6:
            raise PreconditionError(
                "path too long for a P8-free tree", {"path": path}
            )
        middle = min(path[(len(path) - 1) // 2], path[len(path) // 2])
        triples.append((middle, hub, namer.fresh(f"t{k}")))
    triples.append((hub, pendant, namer.fresh("t0")))
    out = ColoredGraph.from_edges(pendant, triples)
    back_map = {
        e: (f"edge:{lf.edge_id(u, v)}" if v < hub else "fresh")
        for e, (u, v, _) in enumerate(out.edges)
    }
    cert = GadgetCertificate(
        stage="tree-p8",
        source=source_name,
        source_kind=SourceKind.LINEAR_FOREST_MRBM,
        offset=1,
        offset_formula="MRBM(T) = MRBM(L) + 1",
        back_map=back_map,
        claims=[Claim.TREE, Claim.P8_FREE, Claim.PROPER, Claim.COLORS_AT_MOST_TWICE],
    )
    return GadgetOutput(out, cert)


GraphStage = Callable[[ColoredGraph, str], GadgetOutput]

# target -> (generator, stage whose output it consumes)
STAGES: Dict[str, Tuple[GraphStage, str]] = {
    "complete": (to_complete, "pec"),
    "path": (to_path, "pec"),
    "lf-p5": (to_lf_p5, "pec"),
    "bip-p4": (to_bip_p4, "lf-p5"),
    "lf-p6": (to_lf_p6, "pec"),
    "tree-p8": (to_tree_p8, "lf-p6"),
}


def target_names() -> List[str]:
    return ["pec", *STAGES]


@dataclass(frozen=True)
class ChainStage:
    """One generated stage with the instance it was built from."""

    name: str
    source: object
    output: GadgetOutput
    verdict: Optional[CertificateVerdict] = None


def _build(
    target: str, source: CubicSource, built: Dict[str, ChainStage]
) -> ChainStage:
    if target in built:
        return built[target]
    if target == "pec":
        stage = ChainStage("pec", source, to_2regular_pec(source))
    elif target in STAGES:
        generator, parent = STAGES[target]
        previous = _build(parent, source, built)
        output = generator(previous.output.graph, f"{source.name}.{parent}")
        stage = ChainStage(target, previous.output.graph, output)
    else:
        raise PreconditionError(
            f"unknown target '{target}'", {"known": target_names()}
        )
    built[target] = stage
    return stage


def generate(target: str, source: CubicSource) -> ChainStage:
    """Build `target` from a cubic source, generating its prerequisites.

    Raises
    ------
    PreconditionError
        For an unknown target name.
    """
    return _build(target, source, {})


def generate_from(
    target: str, instance: ColoredGraph, source_name: str
) -> GadgetOutput:
    """Apply a single colored-graph stage directly to `instance`."""
    if target not in STAGES:
        raise PreconditionError(
            f"target '{target}' needs a cubic source", {"known": list(STAGES)}
        )
    generator, _ = STAGES[target]
    return generator(instance, source_name)


def run_chain(
    source: CubicSource,
    cap: int = DEFAULT_ORACLE_CAP,
    cache: Optional[Cache] = None,
) -> List[ChainStage]:
    """Generate and verify every stage for `source`.

    Identities are checked wherever both instances fit the oracle cap;
    larger stages are checked structurally only.

    Examples
    --------
    >>> [s.verdict.output_optimum for s in run_chain(named_source("k33"))]
    [3, 4, 6, 9, 9, 6, 7]
    """
    built: Dict[str, ChainStage] = {}
    stages: List[ChainStage] = []
    for target in target_names():
        stage = _build(target, source, built)
        verdict = verify_certificate(
            stage.source,
            stage.output.graph,
            stage.output.certificate,
            cap=cap,
            structure_only_above_cap=True,
            cache=cache,
        )
        stages.append(
            ChainStage(stage.name, stage.source, stage.output, verdict)
        )
    return stages
