"""Gadget certificates: recorded optimum identities and their verification.

Every generator returns its output together with a `GadgetCertificate`
stating ``OPT(output) = OPT(source) + offset`` and the structural classes the
output belongs to. `verify_certificate` recomputes both optima with the exact
oracles (cached per instance) and re-checks every recorded claim.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx
import structlog
from pydantic import BaseModel, Field

from ..domain.color_line import build_color_line
from ..domain.instance_io import (
    dump_key_values,
    load_key_values,
    serialize_instance,
)
from ..domain.models import ColoredGraph
from ..domain.structure import analyze
from ..schemas.errors import InstanceParseError, SizeCapExceeded
from ..solvers.models import DEFAULT_ORACLE_CAP
from ..solvers.oracle import oracle_mis, oracle_mrbm
from ..utils.cache import Cache
from .catalog import CubicSource

logger = logging.getLogger(__name__)
events = structlog.get_logger(__name__)


class SourceKind(str, Enum):
    """Which optimum of the source the offset is measured against."""

    CUBIC_MIS = "cubic-MIS"
    PEC_2REGULAR_MRBM = "pec-2regular-MRBM"
    LINEAR_FOREST_MRBM = "linear-forest-MRBM"


class Claim(str, Enum):
    TWO_REGULAR = "two-regular"
    PROPER = "properly-colored"
    COLORS_EXACTLY_TWICE = "colors-exactly-twice"
    COLORS_AT_MOST_TWICE = "colors-at-most-twice"
    COLORS_AT_MOST_FOUR = "colors-at-most-four"
    ONE_HEAVY_COLOR = "one-color-above-two"
    CL_ISOMORPHIC = "cl-isomorphic-to-source"
    COMPLETE = "complete"
    PATH = "path"
    LINEAR_FOREST = "linear-forest"
    P5_FREE = "p5-free"
    P6_FREE = "p6-free"
    P8_FREE = "p8-free"
    TREE = "tree"
    BIPARTITE = "bipartite"
    INDUCED_P4_FREE = "induced-p4-free"


class GadgetCertificate(BaseModel):
    """Identity ``OPT(output) = OPT(source) + offset`` plus structural claims.

    Attributes
    ----------
    stage: str
        Generator that produced the output (``pec``, ``complete``, ``path``,
        ``lf-p5``, ``bip-p4``, ``lf-p6``, ``tree-p8``).
    source: str
        Name of the source instance.
    source_kind: SourceKind
        Optimum of the source the offset refers to.
    offset: int
        Exact difference of the two optima.
    offset_formula: str
        Symbolic form of the offset.
    back_map: Dict[int, str]
        Output edge id to ``vertex:<id>``, ``edge:<id>`` or ``fresh``.
    cycle_count, odd_cycle_count: Optional[int]
        Cycle statistics of the source where the construction uses them.
    claims: List[Claim]
        Structural classes re-checked by `verify_certificate`.
    """

    stage: str
    source: str
    source_kind: SourceKind
    offset: int
    offset_formula: str
    back_map: Dict[int, str] = Field(default_factory=dict)
    cycle_count: Optional[int] = None
    odd_cycle_count: Optional[int] = None
    claims: List[Claim] = Field(default_factory=list)

    def to_key_values(self) -> bytes:
        items: List[Tuple[str, object]] = [
            ("stage", self.stage),
            ("source", self.source),
            ("kind", self.source_kind),
            ("offset", self.offset),
            ("formula", self.offset_formula),
            ("c", self.cycle_count),
            ("o", self.odd_cycle_count),
            ("claims", [c.value for c in self.claims]),
        ]
        head = dump_key_values(items)
        maps = "".join(f"map {e} {self.back_map[e]}\n" for e in sorted(self.back_map))
        return head + maps.encode("utf-8")

    @classmethod
    def from_key_values(cls, text: Union[str, bytes]) -> "GadgetCertificate":
        """Parse the document written by `to_key_values`.

        Raises
        ------
        InstanceParseError
            On malformed ``map`` lines, bad values or missing fields.
        """
        fields: Dict[str, str] = {}
        back_map: Dict[int, str] = {}
        for lineno, (key, value) in enumerate(load_key_values(text), start=1):
            if not key:
                tokens = value.split()
                if len(tokens) != 3 or tokens[0] != "map":
                    raise InstanceParseError("malformed certificate line", lineno)
                try:
                    back_map[int(tokens[1])] = tokens[2]
                except ValueError:
                    raise InstanceParseError("map edge id is not an integer", lineno)
                continue
            fields[key] = value
        missing = {"stage", "source", "kind", "offset", "formula"} - set(fields)
        if missing:
            raise InstanceParseError(f"certificate lacks {', '.join(sorted(missing))}")

        def optional(key: str) -> Optional[int]:
            raw = fields.get(key, "none")
            return None if raw == "none" else int(raw)

        try:
            return cls(
                stage=fields["stage"],
                source=fields["source"],
                source_kind=SourceKind(fields["kind"]),
                offset=int(fields["offset"]),
                offset_formula=fields["formula"],
                back_map=back_map,
                cycle_count=optional("c"),
                odd_cycle_count=optional("o"),
                claims=[Claim(c) for c in fields.get("claims", "").split()],
            )
        except ValueError as exc:
            raise InstanceParseError(f"invalid certificate field: {exc}") from exc


def _proper(graph: ColoredGraph) -> bool:
    for eids in graph.incidence:
        colors = [graph.color(e) for e in eids]
        if len(colors) != len(set(colors)):
            return False
    return True


def _induced_p4_free(nxg: nx.Graph) -> bool:
    for comp in nx.connected_components(nxg):
        for quad in combinations(sorted(comp), 4):
            sub = nxg.subgraph(quad)
            if (
                sub.number_of_edges() == 3
                and max(d for _, d in sub.degree()) == 2
                and nx.is_connected(sub)
            ):
                return False
    return True


def cl_isomorphic(
    output: ColoredGraph, source: CubicSource, back_map: Dict[int, str]
) -> bool:
    """Whether ``back_map`` is an isomorphism from CL(output) onto `source`."""
    image: Dict[int, int] = {}
    for eid in range(output.edge_count):
        entity = back_map.get(eid, "")
        if not entity.startswith("vertex:"):
            return False
        image[eid] = int(entity.split(":", 1)[1])
    if sorted(image.values()) != list(range(1, source.vertex_count + 1)):
        return False
    cl = build_color_line(output)
    mapped = {
        (min(image[a], image[b]), max(image[a], image[b])) for a, b in cl.provenance
    }
    return mapped == set(source.edges)


def check_claims(
    graph: ColoredGraph,
    claims: List[Claim],
    source: Optional[CubicSource] = None,
    back_map: Optional[Dict[int, str]] = None,
) -> List[str]:
    """Return the claims that do not hold for `graph`."""
    report = analyze(graph)
    nxg = graph.to_networkx()
    multiplicity = graph.color_multiplicity()
    n = graph.vertex_count
    checks = {
        Claim.TWO_REGULAR: lambda: all(
            graph.degree(v) == 2 for v in range(1, n + 1)
        ),
        Claim.PROPER: lambda: _proper(graph),
        Claim.COLORS_EXACTLY_TWICE: lambda: all(m == 2 for m in multiplicity),
        Claim.COLORS_AT_MOST_TWICE: lambda: max(multiplicity, default=0) <= 2,
        Claim.COLORS_AT_MOST_FOUR: lambda: max(multiplicity, default=0) <= 4,
        Claim.ONE_HEAVY_COLOR: lambda: sum(1 for m in multiplicity if m > 2) == 1,
        Claim.CL_ISOMORPHIC: lambda: source is not None
        and cl_isomorphic(graph, source, back_map or {}),
        Claim.COMPLETE: lambda: graph.edge_count == n * (n - 1) // 2,
        Claim.PATH: lambda: report.is_path,
        Claim.LINEAR_FOREST: lambda: report.is_linear_forest,
        Claim.P5_FREE: lambda: report.has_no_path(5),
        Claim.P6_FREE: lambda: report.has_no_path(6),
        Claim.P8_FREE: lambda: report.has_no_path(8),
        Claim.TREE: lambda: report.is_tree,
        Claim.BIPARTITE: lambda: nx.is_bipartite(nxg),
        Claim.INDUCED_P4_FREE: lambda: _induced_p4_free(nxg),
    }
    return [claim.value for claim in claims if not checks[claim]()]


_OPTIMA: Cache = Cache(maxsize=256)


def _fingerprint(instance: Union[CubicSource, ColoredGraph]) -> Tuple[str, bytes]:
    if isinstance(instance, CubicSource):
        body = repr((instance.vertex_count, instance.edges)).encode("utf-8")
        return "mis", body
    return "mrbm", serialize_instance(instance)


def optimum(
    instance: Union[CubicSource, ColoredGraph],
    cap: int = DEFAULT_ORACLE_CAP,
    cache: Optional[Cache] = None,
) -> int:
    """Exact optimum via the oracles: MIS for cubic sources, MRBM otherwise."""
    store = _OPTIMA if cache is None else cache

    def compute() -> int:
        if isinstance(instance, CubicSource):
            return len(oracle_mis(instance.to_networkx(), cap=cap))
        return oracle_mrbm(instance, cap=cap).size

    return store.get_or_compute(_fingerprint(instance), compute)


@dataclass(frozen=True)
class CertificateVerdict:
    """Outcome of `verify_certificate`.

    ``identity_checked`` is false when an instance was above the oracle cap
    and only the structural claims were verified.
    """

    stage: str
    failures: Tuple[str, ...] = field(default_factory=tuple)
    source_optimum: Optional[int] = None
    output_optimum: Optional[int] = None
    identity_checked: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures

    def report_items(self):
        yield f"{self.stage}.ok", self.ok
        yield f"{self.stage}.identity_checked", self.identity_checked
        yield f"{self.stage}.source_optimum", self.source_optimum
        yield f"{self.stage}.output_optimum", self.output_optimum
        yield f"{self.stage}.failures", list(self.failures)


def verify_certificate(
    source: Union[CubicSource, ColoredGraph],
    output: ColoredGraph,
    cert: GadgetCertificate,
    cap: int = DEFAULT_ORACLE_CAP,
    structure_only_above_cap: bool = False,
    cache: Optional[Cache] = None,
) -> CertificateVerdict:
    """Check a certificate against its source and output instances.

    Parameters
    ----------
    source : CubicSource or ColoredGraph
        The instance the generator consumed.
    output : ColoredGraph
        The generated instance.
    cert : GadgetCertificate
        Recorded identity and claims.
    cap : int
        Oracle size cap for both optima.
    structure_only_above_cap : bool
        Skip the identity (instead of raising) when an instance is too large.

    Raises
    ------
    SizeCapExceeded
        If an instance is above ``cap`` and ``structure_only_above_cap`` is
        false.
    """
    failures = list(
        check_claims(
            output,
            cert.claims,
            source if isinstance(source, CubicSource) else None,
            cert.back_map,
        )
    )
    expects_cubic = cert.source_kind == SourceKind.CUBIC_MIS
    if expects_cubic != isinstance(source, CubicSource):
        failures.append("source-kind")

    source_opt: Optional[int] = None
    output_opt: Optional[int] = None
    checked = False
    try:
        source_opt = optimum(source, cap, cache)
        output_opt = optimum(output, cap, cache)
        checked = True
    except SizeCapExceeded:
        if not structure_only_above_cap:
            raise
    if checked and output_opt != source_opt + cert.offset:
        failures.append("offset-identity")

    verdict = CertificateVerdict(
        stage=cert.stage,
        failures=tuple(failures),
        source_optimum=source_opt,
        output_optimum=output_opt,
        identity_checked=checked,
    )
    events.info(
        "certificate.verified",
        stage=cert.stage,
        source=cert.source,
        ok=verdict.ok,
        identity_checked=checked,
        source_optimum=source_opt,
        output_optimum=output_opt,
    )
    return verdict
