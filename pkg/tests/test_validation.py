"""
Tests for rainbow matching validation.
"""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.domain.instance_io import parse_instance
from src.domain.models import RainbowMatching, ViolationKind
from src.domain.validation import is_rainbow_matching, validate_solution
from src.schemas.errors import InvariantViolation, PreconditionError

# Path 1-2-3-4-5 colored a b a b
PATH = "p cgraph 5 4\ne 1 2 a\ne 2 3 b\ne 3 4 a\ne 4 5 b\n"


def test_valid_matching():
    graph = parse_instance(PATH)
    verdict = validate_solution(graph, [0, 3])
    assert verdict.ok
    assert verdict.violations == ()


def test_empty_set_is_valid():
    assert validate_solution(parse_instance(PATH), []).ok


def test_shared_color_reported():
    graph = parse_instance(PATH)
    verdict = validate_solution(graph, [0, 2])
    assert not verdict.ok
    assert [(v.kind, v.first, v.second) for v in verdict.violations] == [
        (ViolationKind.SHARED_COLOR, 0, 2)
    ]


def test_shared_vertex_reported():
    graph = parse_instance(PATH)
    verdict = validate_solution(graph, [1, 0])
    assert [(v.kind, v.first, v.second) for v in verdict.violations] == [
        (ViolationKind.SHARED_VERTEX, 0, 1)
    ]


def test_every_violation_is_listed_in_order():
    graph = parse_instance(PATH)
    verdict = validate_solution(graph, [0, 1, 2])
    assert [(v.first, v.second, v.kind.value) for v in verdict.violations] == [
        (0, 1, "shared-vertex"),
        (0, 2, "shared-color"),
        (1, 2, "shared-vertex"),
    ]


def test_duplicate_ids_are_ignored():
    assert validate_solution(parse_instance(PATH), [0, 0, 3]).ok


def test_out_of_range_edge_id():
    with pytest.raises(PreconditionError, match="out of range"):
        validate_solution(parse_instance(PATH), [4])


def test_checked_matching_rejects_conflicts():
    graph = parse_instance(PATH)
    assert RainbowMatching.checked(graph, [3, 0]).edge_ids == (0, 3)
    with pytest.raises(InvariantViolation):
        RainbowMatching.checked(graph, [0, 2])


@st.composite
def instance_and_subset(draw):
    n = draw(st.integers(min_value=2, max_value=6))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1))
    labels = draw(
        st.lists(st.sampled_from("abc"), min_size=len(chosen), max_size=len(chosen))
    )
    text = f"p cgraph {n} {len(chosen)}\n" + "".join(
        f"e {u} {v} {c}\n" for (u, v), c in zip(chosen, labels)
    )
    graph = parse_instance(text)
    subset = draw(st.sets(st.integers(min_value=0, max_value=len(chosen) - 1)))
    return graph, subset


@settings(max_examples=200)
@given(instance_and_subset())
def test_validation_agrees_with_pairwise_definition(case):
    graph, subset = case
    expected = all(
        not set(graph.endpoints(a)) & set(graph.endpoints(b))
        and graph.color(a) != graph.color(b)
        for a, b in combinations(sorted(subset), 2)
    )
    assert is_rainbow_matching(graph, subset) == expected
