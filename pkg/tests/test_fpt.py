"""
Tests for the P5-free forest FPT solver and the P7-to-P6 branching.
"""

import pytest

from src.corpus import CorpusClass, generate_corpus
from src.domain.instance_io import parse_instance
from src.domain.structure import analyze
from src.schemas.errors import PreconditionError
from src.solvers import (
    SolveMethod,
    oracle_mrbm,
    reduce_p7_to_p6,
    solve_p5_forest_fpt,
)
from src.solvers.fpt import (
    double_star_centers,
    kernel_default,
    kernel_edges,
    rainbow_subsets,
)

# centers 1 and 2, two leaves each
DOUBLE_STAR = "p cgraph 6 5\ne 1 2 a\ne 1 3 b\ne 1 4 c\ne 2 5 d\ne 2 6 e\n"

# ============================================================================
# Building blocks
# ============================================================================


def test_double_star_centers():
    assert double_star_centers(parse_instance(DOUBLE_STAR)) == (0,)


def test_rainbow_subsets_order():
    graph = parse_instance(DOUBLE_STAR)
    assert list(rainbow_subsets(graph, [0, 1, 3])) == [
        (1, 3),
        (0,),
        (1,),
        (3,),
        (),
    ]
    assert list(rainbow_subsets(graph, [3, 1, 0], largest_first=False)) == [
        (),
        (0,),
        (1,),
        (3,),
        (1, 3),
    ]


def test_kernel_keeps_one_edge_per_color_up_to_star_count():
    graph = parse_instance("p cgraph 5 4\ne 1 2 a\ne 1 3 a\ne 1 4 b\ne 1 5 c\n")
    assert kernel_edges(graph, [0, 1, 2, 3]) == (0,)


def test_kernel_default_needs_p4_in_every_component():
    assert kernel_default(analyze(parse_instance(DOUBLE_STAR)))
    text = DOUBLE_STAR.replace("p cgraph 6 5", "p cgraph 8 6") + "e 7 8 a\n"
    assert not kernel_default(analyze(parse_instance(text)))


# ============================================================================
# solve_p5_forest_fpt() tests
# ============================================================================


def test_double_star_optimum():
    result = solve_p5_forest_fpt(parse_instance(DOUBLE_STAR))
    assert result.size == 2
    assert result.method == SolveMethod.P5_FPT


@pytest.mark.parametrize("kernel", [None, True, False])
def test_kernel_modes_agree_with_oracle(kernel):
    corpus = generate_corpus(CorpusClass.P5_FOREST, 40, seed=17, max_edges=14)
    for graph in corpus:
        result = solve_p5_forest_fpt(graph, kernel=kernel)
        assert result.matching == oracle_mrbm(graph).matching
        assert result.branch_count <= 2 ** analyze(graph).p4_component_count


def test_banned_colors():
    graph = parse_instance(DOUBLE_STAR)
    result = solve_p5_forest_fpt(graph, banned=[graph.color(1), graph.color(2)])
    # leaves at vertex 1 are unusable; the center edge or one leaf at 2 remains
    assert result.size == 1


def test_rejects_p5(colored_path):
    with pytest.raises(PreconditionError, match="contains a P5"):
        solve_p5_forest_fpt(colored_path("abcd"))


def test_rejects_cycle(c6_three_colors):
    with pytest.raises(PreconditionError, match="not a forest"):
        solve_p5_forest_fpt(c6_three_colors)


# ============================================================================
# reduce_p7_to_p6() tests
# ============================================================================


def test_reduce_p6_path(p6_alternating):
    branches = reduce_p7_to_p6(p6_alternating)
    assert [b.fixed for b in branches] == [(), (2,)]
    assert branches[0].active_edges == {0, 1, 3, 4}
    assert branches[1].active_edges == {0, 4}
    assert branches[1].banned.colors == {p6_alternating.color(2)}


def test_reduce_rejects_p7(colored_path):
    with pytest.raises(PreconditionError):
        reduce_p7_to_p6(colored_path("abcdef"))


def test_reduction_preserves_the_optimum():
    for graph in generate_corpus(CorpusClass.P7_FOREST, 30, seed=21, max_edges=14):
        best = 0
        for branch in reduce_p7_to_p6(graph):
            sub, _ = branch.materialize(graph)
            assert analyze(sub).has_no_path(6)
            rest = oracle_mrbm(graph, banned=branch.banned, edges=branch.active_edges)
            best = max(best, len(branch.fixed) + rest.size)
        assert best == oracle_mrbm(graph).size
