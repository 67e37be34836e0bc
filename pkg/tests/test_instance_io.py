"""
Tests for the instance, solution and key-value text formats.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.domain.instance_io import (
    dump_key_values,
    load_key_values,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from src.domain.models import ColoredGraph
from src.schemas.errors import InstanceParseError

# ============================================================================
# parse_instance() tests
# ============================================================================


def test_parse_instance_basic():
    """Comments are skipped and edges come out in canonical order."""
    text = "c two edges\np cgraph 3 2\ne 3 2 blue\ne 2 1 red\n"
    graph = parse_instance(text)
    assert graph.vertex_count == 3
    assert graph.edges == ((1, 2, 0), (2, 3, 1))
    assert graph.color_names == ("red", "blue")


def test_parse_instance_accepts_bytes():
    graph = parse_instance(b"p cgraph 2 1\ne 1 2 a\n")
    assert graph.edge_count == 1
    assert graph.label(0) == "a"


def test_parse_instance_empty_graph():
    graph = parse_instance("p cgraph 0 0\n")
    assert graph.vertex_count == 0
    assert graph.edges == ()


def test_color_ids_follow_canonical_edge_order():
    """Color ids are assigned by first occurrence after sorting edges."""
    graph = parse_instance("p cgraph 4 3\ne 3 4 x\ne 1 2 y\ne 2 3 x\n")
    assert graph.color_names == ("y", "x")
    assert [graph.color(e) for e in range(3)] == [0, 1, 1]


@pytest.mark.parametrize(
    "text,line",
    [
        ("e 1 2 a\n", 1),
        ("p cgraph 3 1\ne 1 4 a\n", 2),
        ("p cgraph 3 2\ne 1 2 a\ne 2 1 b\n", 3),
        ("p cgraph 3 1\ne 2 2 a\n", 2),
        ("p cgraph 3 1\ne 1 x a\n", 2),
        ("p cgraph 3 1\nq 1 2 a\n", 2),
        ("p cgraph 3 1\ne 1 2\n", 2),
        ("p graph 3 1\n", 1),
        ("p cgraph 3 1\np cgraph 3 1\n", 2),
    ],
)
def test_parse_instance_errors_name_the_line(text, line):
    with pytest.raises(InstanceParseError) as info:
        parse_instance(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_instance_edge_count_mismatch():
    with pytest.raises(InstanceParseError, match="announces 2 edges but 1"):
        parse_instance("p cgraph 3 2\ne 1 2 a\n")


def test_parse_instance_missing_header():
    with pytest.raises(InstanceParseError, match="missing header"):
        parse_instance("c nothing here\n")


def test_parse_instance_rejects_invalid_utf8():
    with pytest.raises(InstanceParseError, match="UTF-8"):
        parse_instance(b"p cgraph 2 1\ne 1 2 \xff\n")


# ============================================================================
# serialize_instance() tests
# ============================================================================


def test_serialize_instance_is_canonical():
    graph = parse_instance("p cgraph 3 2\ne 3 2 blue\ne 2 1 red\n")
    assert serialize_instance(graph) == b"p cgraph 3 2\ne 1 2 red\ne 2 3 blue\n"


@st.composite
def colored_graphs(draw):
    n = draw(st.integers(min_value=0, max_value=7))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    labels = draw(
        st.lists(st.sampled_from("abcd"), min_size=len(chosen), max_size=len(chosen))
    )
    return ColoredGraph.from_edges(
        n, [(u, v, c) for (u, v), c in zip(chosen, labels)]
    )


@given(colored_graphs())
def test_serialized_instance_parses_back_to_the_same_graph(graph):
    assert parse_instance(serialize_instance(graph)) == graph


# ============================================================================
# Solution format tests
# ============================================================================


def test_solution_roundtrip():
    graph = parse_instance("p cgraph 4 3\ne 1 2 a\ne 2 3 b\ne 3 4 c\n")
    text = serialize_solution(graph, [2, 0])
    assert text == b"s rbm 2\nm 1 2 a\nm 3 4 c\n"
    assert parse_solution(graph, text) == (0, 2)


def test_empty_solution():
    graph = parse_instance("p cgraph 0 0\n")
    assert serialize_solution(graph, []) == b"s rbm 0\n"
    assert parse_solution(graph, "s rbm 0\n") == ()


@pytest.mark.parametrize(
    "text,message",
    [
        ("s rbm 1\nm 1 3 a\n", "not in instance"),
        ("s rbm 1\nm 1 2 b\n", "has color 'a'"),
        ("s rbm 2\nm 1 2 a\n", "announces 2 edges"),
        ("m 1 2 a\n", "before header"),
        ("s rbm x\n", "not an integer"),
    ],
)
def test_parse_solution_errors(text, message):
    graph = parse_instance("p cgraph 3 2\ne 1 2 a\ne 2 3 b\n")
    with pytest.raises(InstanceParseError, match=message):
        parse_solution(graph, text)


# ============================================================================
# Key-value documents
# ============================================================================


def test_dump_key_values_formats_values():
    text = dump_key_values(
        [("ok", True), ("bad", False), ("none", None), ("ids", [1, 2]), ("n", 3)]
    )
    assert text == b"ok: true\nbad: false\nnone: none\nids: 1 2\nn: 3\n"


def test_load_key_values_keeps_order_and_odd_lines():
    pairs = load_key_values("a: 1\nclaims:\nmap 0 fresh\na: 2\n")
    assert pairs == [("a", "1"), ("claims", ""), ("", "map 0 fresh"), ("a", "2")]
