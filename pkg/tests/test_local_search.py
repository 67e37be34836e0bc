"""
Tests for the greedy plus swap local search.
"""

from fractions import Fraction

import pytest
from pydantic import ValidationError
from structlog.testing import capture_logs

from src.approx import (
    LocalSearchConfig,
    approx_mrbm,
    greedy_maximal_is,
    local_search_mis,
)
from src.approx.local_search import SearchCounters, find_improving_swap
from src.corpus import CorpusClass, generate_corpus
from src.domain.color_line import build_color_line
from src.domain.instance_io import parse_instance
from src.domain.validation import is_rainbow_matching
from src.solvers import oracle_mrbm

# path 3-1-2-4: the lowest edge 1-2 sits between the other two
GREEDY_TRAP = "p cgraph 4 3\ne 1 2 a\ne 1 3 b\ne 2 4 c\n"


def test_greedy_scans_in_order():
    assert greedy_maximal_is([{1}, {0, 2}, {1}]) == (0, 2)
    assert greedy_maximal_is([]) == ()


def test_swap_escapes_the_greedy_trap():
    graph = parse_instance(GREEDY_TRAP)
    stuck = approx_mrbm(graph, LocalSearchConfig(swap_size=0))
    assert stuck.matching.edge_ids == (0,)
    freed = approx_mrbm(graph, LocalSearchConfig(swap_size=1))
    assert freed.matching.edge_ids == (1, 2)
    assert freed.swaps_applied == 1
    assert freed.passes == 2


def test_find_improving_swap_is_canonical():
    adj = [{1, 2}, {0}, {0}]
    assert find_improving_swap(adj, {0}, swap_size=1) == ((0,), (1, 2))
    assert find_improving_swap(adj, {0}, swap_size=0) is None


def test_six_cycle_reaches_optimum(c6_three_colors):
    result = approx_mrbm(c6_three_colors, LocalSearchConfig(swap_size=2))
    assert result.final_size == 3
    assert is_rainbow_matching(c6_three_colors, result.matching.edge_ids)


def test_pass_limit():
    graph = parse_instance(GREEDY_TRAP)
    result = approx_mrbm(graph, LocalSearchConfig(swap_size=1, max_passes=1))
    assert result.passes == 1
    assert result.final_size == 2


def test_start_set_is_respected():
    adj = [{1, 2}, {0}, {0}]
    assert local_search_mis(adj, LocalSearchConfig(swap_size=0)) == (0,)
    # starting from 1 lets the free vertex 2 join without any swap
    assert local_search_mis(adj, LocalSearchConfig(swap_size=0), start=[1]) == (1, 2)


def test_report_items_with_optimum():
    graph = parse_instance(GREEDY_TRAP)
    result = approx_mrbm(graph, LocalSearchConfig(swap_size=0))
    items = dict(result.report_items(optimum=2))
    assert items["final_size"] == 1
    assert items["floor_ratio"] == "1/3"
    assert items["opt_upper_bound"] == 3
    assert items["floor_bound"] == 1
    assert items["observed_ratio"] == "1/2"
    assert result.observed_ratio(0) is None
    assert result.floor_ratio == Fraction(1, 3)


def test_report_items_state_a_floor_without_an_optimum():
    graph = parse_instance(GREEDY_TRAP)
    result = approx_mrbm(graph, LocalSearchConfig(swap_size=0))
    items = dict(result.report_items())
    assert items["floor_bound"] == result.floor_bound() == 1
    assert "optimum" not in items
    assert "observed_ratio" not in items


def test_config_validation():
    with pytest.raises(ValidationError):
        LocalSearchConfig(swap_size=-1)
    with pytest.raises(ValidationError):
        LocalSearchConfig(max_passes=0)


def test_pass_events_are_logged():
    with capture_logs() as logs:
        approx_mrbm(parse_instance(GREEDY_TRAP), LocalSearchConfig(swap_size=1))
    passes = [e for e in logs if e["event"] == "local_search.pass"]
    assert [e["improved"] for e in passes] == [True, False]
    assert [e["size"] for e in passes] == [1, 2]


def test_result_size_never_drops_as_swap_size_grows():
    for graph in generate_corpus(CorpusClass.RANDOM, 40, seed=31, max_edges=18):
        sizes = [
            approx_mrbm(graph, LocalSearchConfig(swap_size=t)).final_size
            for t in range(4)
        ]
        assert sizes == sorted(sizes)


def test_guarantee_holds_against_the_oracle():
    for graph in generate_corpus(CorpusClass.RANDOM, 40, seed=37, max_edges=16):
        optimum = oracle_mrbm(graph).size
        result = approx_mrbm(graph, LocalSearchConfig(swap_size=2))
        assert is_rainbow_matching(graph, result.matching.edge_ids)
        assert result.final_size >= result.floor_bound(optimum)
        assert optimum <= result.opt_upper_bound


@pytest.mark.parametrize("swap_size", [1, 2, 3])
def test_search_output_admits_no_further_swap(swap_size):
    config = LocalSearchConfig(swap_size=swap_size)
    for graph in generate_corpus(CorpusClass.RANDOM, 30, seed=41, max_edges=14):
        cl = build_color_line(graph)
        found = local_search_mis(cl, config)
        counters = SearchCounters()
        again = local_search_mis(cl, config, start=found, counters=counters)
        assert again == found
        assert counters.swaps_applied == 0
        assert counters.passes == 1
