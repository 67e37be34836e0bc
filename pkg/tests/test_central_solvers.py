"""
Tests for the P7-free tree and forest solvers.
"""

import pytest

from src.corpus import CorpusClass, exhaustive_forests, generate_corpus
from src.domain.instance_io import parse_instance
from src.domain.structure import analyze
from src.schemas.errors import PreconditionError
from src.solvers import SolveMethod, oracle_mrbm, solve_p7_forest, solve_p7_tree
from src.solvers.central import central_edges

# two P6 components sharing colors
TWO_P6 = (
    "p cgraph 12 10\n"
    "e 1 2 a\ne 2 3 b\ne 3 4 a\ne 4 5 b\ne 5 6 a\n"
    "e 7 8 b\ne 8 9 c\ne 9 10 b\ne 10 11 c\ne 11 12 b\n"
)


def test_alternating_p6(p6_alternating):
    result = solve_p7_tree(p6_alternating)
    assert result.size == 2
    assert result.method == SolveMethod.P7_TREE
    assert result.certificate_of_optimality


def test_star_needs_no_branching():
    graph = parse_instance("p cgraph 4 3\ne 1 2 a\ne 1 3 b\ne 1 4 c\n")
    result = solve_p7_tree(graph)
    assert result.size == 1
    assert result.branch_count == 1


def test_forest_solver():
    graph = parse_instance(TWO_P6)
    result = solve_p7_forest(graph)
    assert result.method == SolveMethod.P7_FOREST
    assert result.size == oracle_mrbm(graph).size == 3


def test_tree_solver_rejects_forest():
    with pytest.raises(PreconditionError, match="not a tree"):
        solve_p7_tree(parse_instance(TWO_P6))


def test_rejects_p7(colored_path):
    with pytest.raises(PreconditionError, match="contains a P7"):
        solve_p7_tree(colored_path("abcdef"))
    with pytest.raises(PreconditionError, match="contains a P7"):
        solve_p7_forest(colored_path("abcdef"))


def test_rejects_cycle(c6_three_colors):
    with pytest.raises(PreconditionError, match="not a forest"):
        solve_p7_forest(c6_three_colors)


def test_banned_colors(p6_alternating):
    result = solve_p7_tree(p6_alternating, banned=[0])
    assert result.size == 1
    assert p6_alternating.label(result.matching.edge_ids[0]) == "2"


def test_central_edges_listed_per_component():
    found = central_edges(parse_instance(TWO_P6))
    assert [{c.x, c.y} for c in found] == [{3, 4}, {9, 10}]


def test_thread_count_does_not_change_the_outcome():
    for graph in generate_corpus(CorpusClass.P7_FOREST, 10, seed=5, max_edges=25):
        one = solve_p7_forest(graph, threads=1)
        four = solve_p7_forest(graph, threads=4)
        assert one.matching == four.matching
        assert one.branch_count == four.branch_count
        assert one.pruned_branches == four.pruned_branches


def test_p7_trees_match_oracle():
    for graph in generate_corpus(CorpusClass.P7_TREE, 40, seed=7, max_edges=14):
        assert solve_p7_tree(graph).matching == oracle_mrbm(graph).matching


def test_p7_forests_match_oracle():
    for graph in generate_corpus(CorpusClass.P7_FOREST, 40, seed=9, max_edges=14):
        assert solve_p7_forest(graph).matching == oracle_mrbm(graph).matching


def test_all_small_colored_forests_match_oracle():
    for graph in exhaustive_forests(max_edges=5, max_colors=3):
        report = analyze(graph)
        if not report.has_no_path(7):
            continue
        assert solve_p7_forest(graph).matching == oracle_mrbm(graph).matching


def test_banning_one_color_costs_at_most_one_edge():
    for graph in generate_corpus(CorpusClass.P7_FOREST, 100, seed=31, max_edges=12):
        full = solve_p7_forest(graph).size
        for color in range(graph.color_count):
            banned = solve_p7_forest(graph, banned=[color]).size
            assert banned <= full <= banned + 1
            assert banned == oracle_mrbm(graph, banned=[color]).size
