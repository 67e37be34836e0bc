"""Line-oriented text formats: instances, solutions and key-value documents.

Instance format::

    c <comment>
    p cgraph <n> <m>
    e <u> <v> <color-label>        (exactly m lines, 1 <= u, v <= n)

Solution format::

    s rbm <k>
    m <u> <v> <color-label>        (k lines, each naming an instance edge)

Reports and certificates are key-value documents with one ``key: value`` pair
per line. Serialization is byte-deterministic.
"""

from __future__ import annotations

import logging
from typing import Any, Iterable, List, Tuple, Union

from ..schemas.errors import InstanceParseError
from .models import ColoredGraph

logger = logging.getLogger(__name__)

Text = Union[str, bytes]


def _lines(text: Text) -> List[str]:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InstanceParseError("input is not valid UTF-8") from exc
    return text.splitlines()


def _int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceParseError(
            f"{what} '{token}' is not an integer", lineno
        ) from None


def parse_instance(text: Text) -> ColoredGraph:
    """Parse an instance into its canonical `ColoredGraph`.

    Raises
    ------
    InstanceParseError
        For a malformed header, an out-of-range vertex, a duplicate edge, a
        self-loop or an edge count that disagrees with the header. The
        message names the offending line.
    """
    header: Tuple[int, int] | None = None
    triples: List[Tuple[int, int, str]] = []
    seen: dict[Tuple[int, int], int] = {}
    last = 0
    for lineno, raw in enumerate(_lines(text), start=1):
        last = lineno
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise InstanceParseError("second header", lineno)
            if len(tokens) != 4 or tokens[1] != "cgraph":
                raise InstanceParseError("malformed header", lineno)
            n = _int(tokens[2], "vertex count", lineno)
            m = _int(tokens[3], "edge count", lineno)
            if n < 0 or m < 0:
                raise InstanceParseError("malformed header", lineno)
            header = (n, m)
            continue
        if tokens[0] != "e":
            raise InstanceParseError(f"unknown line type '{tokens[0]}'", lineno)
        if len(tokens) != 4:
            raise InstanceParseError("edge line needs 'e <u> <v> <color>'", lineno)
        u = _int(tokens[1], "vertex", lineno)
        v = _int(tokens[2], "vertex", lineno)
        if u == v:
            raise InstanceParseError("self-loop", lineno)
        if header is None:
            raise InstanceParseError("edge before header", lineno)
        for w in (u, v):
            if not 1 <= w <= header[0]:
                raise InstanceParseError(f"vertex {w} out of range", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InstanceParseError(
                f"duplicate edge {key[0]}-{key[1]} (first at line {seen[key]})", lineno
            )
        seen[key] = lineno
        triples.append((u, v, tokens[3]))
    if header is None:
        raise InstanceParseError("missing header 'p cgraph <n> <m>'", last or None)
    if len(triples) != header[1]:
        raise InstanceParseError(
            f"header announces {header[1]} edges but {len(triples)} found", last
        )
    graph = ColoredGraph.from_edges(header[0], triples)
    logger.debug(
        "instance.parsed vertices=%d edges=%d colors=%d",
        graph.vertex_count,
        graph.edge_count,
        graph.color_count,
    )
    return graph


def serialize_instance(graph: ColoredGraph) -> bytes:
    """Render `graph` in canonical edge order."""
    out = [f"p cgraph {graph.vertex_count} {graph.edge_count}"]
    for u, v, c in graph.edges:
        out.append(f"e {u} {v} {graph.color_names[c]}")
    return ("\n".join(out) + "\n").encode("utf-8")


def serialize_solution(graph: ColoredGraph, edge_ids: Iterable[int]) -> bytes:
    """Render a solution; edges are listed in increasing edge-id order."""
    ids = sorted(edge_ids)
    out = [f"s rbm {len(ids)}"]
    for eid in ids:
        u, v, c = graph.edges[eid]
        out.append(f"m {u} {v} {graph.color_names[c]}")
    return ("\n".join(out) + "\n").encode("utf-8")


def parse_solution(graph: ColoredGraph, text: Text) -> Tuple[int, ...]:
    """Parse a solution file against `graph` and return its edge ids.

    Each ``m`` line must name an existing edge carrying the same color label.
    """
    declared: int | None = None
    ids: List[int] = []
    last = 0
    for lineno, raw in enumerate(_lines(text), start=1):
        last = lineno
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        tokens = line.split()
        if tokens[0] == "s":
            if len(tokens) != 3 or tokens[1] != "rbm" or declared is not None:
                raise InstanceParseError("malformed solution header", lineno)
            declared = _int(tokens[2], "solution size", lineno)
            continue
        if tokens[0] != "m" or len(tokens) != 4:
            raise InstanceParseError("solution line needs 'm <u> <v> <color>'", lineno)
        if declared is None:
            raise InstanceParseError("matching line before header", lineno)
        u = _int(tokens[1], "vertex", lineno)
        v = _int(tokens[2], "vertex", lineno)
        if not graph.has_edge(u, v):
            raise InstanceParseError(f"edge {u}-{v} not in instance", lineno)
        eid = graph.edge_id(u, v)
        if graph.label(eid) != tokens[3]:
            raise InstanceParseError(
                f"edge {u}-{v} has color '{graph.label(eid)}', not '{tokens[3]}'",
                lineno,
            )
        ids.append(eid)
    if declared is None:
        raise InstanceParseError("missing header 's rbm <k>'", last or None)
    if declared != len(ids):
        raise InstanceParseError(
            f"header announces {declared} edges but {len(ids)} found", last
        )
    return tuple(ids)


def format_value(value: Any) -> str:
    """Render a report value: booleans lower-case, sequences space-joined."""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    if isinstance(value, (list, tuple)):
        return " ".join(format_value(v) for v in value)
    return str(value)


def dump_key_values(items: Iterable[Tuple[str, Any]]) -> bytes:
    """Serialize ``(key, value)`` pairs, one ``key: value`` line each."""
    out = [f"{key}: {format_value(value)}" for key, value in items]
    return ("\n".join(out) + "\n").encode("utf-8")


def load_key_values(text: Text) -> List[Tuple[str, str]]:
    """Parse a key-value document, keeping order and repeated keys.

    Lines that do not contain ``': '`` are returned with an empty key so
    that callers with extra line types (e.g. certificate ``map`` lines) can
    handle them.
    """
    pairs: List[Tuple[str, str]] = []
    for raw in _lines(text):
        line = raw.rstrip()
        if not line:
            continue
        key, sep, value = line.partition(": ")
        if not sep and line.endswith(":") and " " not in line:
            pairs.append((line[:-1], ""))
        elif not sep:
            pairs.append(("", line))
        else:
            pairs.append((key, value))
    return pairs
