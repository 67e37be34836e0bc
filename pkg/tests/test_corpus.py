"""
Tests for seeded instance corpora and exhaustive forest families.
"""

import random

import pytest

from src.corpus import CorpusClass, exhaustive_forests, generate_corpus, random_instance
from src.domain.instance_io import serialize_instance
from src.domain.models import ComponentKind
from src.domain.structure import analyze
from src.schemas.errors import PreconditionError


def test_corpus_is_deterministic():
    for kind in CorpusClass:
        first = [serialize_instance(g) for g in generate_corpus(kind, 5, seed=99)]
        again = [serialize_instance(g) for g in generate_corpus(kind, 5, seed=99)]
        assert first == again


def test_seeds_differ():
    a = [serialize_instance(g) for g in generate_corpus(CorpusClass.RANDOM, 5, seed=1)]
    b = [serialize_instance(g) for g in generate_corpus(CorpusClass.RANDOM, 5, seed=2)]
    assert a != b


@pytest.mark.parametrize("kind", list(CorpusClass))
def test_edge_budget(kind):
    for graph in generate_corpus(kind, 30, seed=4, max_edges=12):
        assert graph.edge_count <= 12


def test_star_triangle_class():
    allowed = {ComponentKind.STAR, ComponentKind.TRIANGLE}
    for graph in generate_corpus(CorpusClass.STAR_TRIANGLE, 30, seed=8):
        assert {c.kind for c in analyze(graph).components} <= allowed


def test_p7_tree_class():
    for graph in generate_corpus(CorpusClass.P7_TREE, 30, seed=8):
        report = analyze(graph)
        assert report.is_tree
        assert report.has_no_path(7)


def test_p7_forest_class():
    for graph in generate_corpus(CorpusClass.P7_FOREST, 30, seed=8):
        report = analyze(graph)
        assert report.is_forest
        assert report.has_no_path(7)


def test_p5_forest_class():
    for graph in generate_corpus(CorpusClass.P5_FOREST, 30, seed=8):
        report = analyze(graph)
        assert report.is_forest
        assert report.has_no_path(5)
        assert report.p4_component_count <= 6


def test_proper_class():
    for graph in generate_corpus(CorpusClass.PROPER, 30, seed=8):
        assert analyze(graph).properly_colored


def test_random_instance_rejects_empty_budget():
    with pytest.raises(PreconditionError):
        random_instance(CorpusClass.RANDOM, random.Random(0), max_edges=0)


# ============================================================================
# exhaustive_forests() tests
# ============================================================================


def test_exhaustive_forest_count():
    # 1 empty + 1 + 2*2 + 4*4 forest/coloring pairs
    assert sum(1 for _ in exhaustive_forests(3, 2)) == 22


def test_exhaustive_forests_are_forests():
    for graph in exhaustive_forests(4, 3):
        report = analyze(graph)
        assert report.is_forest
        assert graph.edge_count <= 4
        assert graph.color_count <= 3
        assert all(c.kind != ComponentKind.ISOLATED for c in report.components)
