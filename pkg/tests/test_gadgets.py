"""
Tests for the cubic source catalog and the reduction gadgets.
"""

import networkx as nx
import pytest

from src.domain.instance_io import parse_instance
from src.domain.structure import analyze
from src.gadgets import (
    CubicSource,
    check_claims,
    find_perfect_matching,
    generate,
    generate_from,
    named_source,
    run_chain,
    source_names,
    target_names,
    to_2regular_pec,
    to_bip_p4,
    to_tree_p8,
    validate_cubic_source,
)
from src.gadgets.catalog import SourceProblemKind
from src.gadgets.constructions import ColorNamer, cycles_of
from src.schemas.errors import PreconditionError

# ============================================================================
# catalog tests
# ============================================================================


def test_catalog_names():
    assert source_names() == [
        "k33",
        "heawood",
        "pappus",
        "moebius-kantor",
        "desargues",
        "petersen",
    ]


def test_catalog_sources_are_valid():
    for name in source_names():
        source = named_source(name)
        assert validate_cubic_source(source).ok
        assert 2 * source.edge_count == 3 * source.vertex_count


def test_unknown_source_is_rejected():
    with pytest.raises(PreconditionError) as exc:
        named_source("k4")
    assert "k33" in exc.value.details["known"]


def test_validation_reports_triangle():
    verdict = validate_cubic_source(nx.complete_graph(4))
    assert [p.kind for p in verdict.problems] == [SourceProblemKind.TRIANGLE]
    assert verdict.problems[0].witness == (0, 1, 2)


def test_validation_reports_degree_and_bridge():
    verdict = validate_cubic_source(nx.path_graph(4))
    assert [p.kind for p in verdict.problems] == [
        SourceProblemKind.DEGREE,
        SourceProblemKind.BRIDGE,
    ]
    assert verdict.problems[1].witness == (0, 1)


def test_perfect_matching_covers_every_vertex():
    for name in source_names():
        source = named_source(name)
        pairs = find_perfect_matching(source)
        covered = sorted(v for pair in pairs for v in pair)
        assert covered == list(range(1, source.vertex_count + 1))
        assert set(pairs) <= set(source.edges)


def test_exhaustive_perfect_matching_is_lex_first(k33):
    assert find_perfect_matching(k33, exhaustive=True) == ((1, 4), (2, 5), (3, 6))


def test_exhaustive_perfect_matching_limit():
    with pytest.raises(PreconditionError):
        find_perfect_matching(named_source("heawood"), exhaustive=True)


def test_color_namer_skips_taken_labels():
    namer = ColorNamer(["k", "k_2"])
    assert namer.fresh("k") == "k_3"
    assert namer.fresh("m") == "m"
    assert namer.fresh("m") == "m_2"


# ============================================================================
# pec tests
# ============================================================================


def test_pec_of_k33(k33):
    out = to_2regular_pec(k33, matching=((1, 4), (2, 5), (3, 6)))
    graph, cert = out.graph, out.certificate
    assert (graph.vertex_count, graph.edge_count) == (6, 6)
    assert graph.color_multiplicity() == [2, 2, 2]
    assert (cert.cycle_count, cert.odd_cycle_count) == (1, 0)
    assert cert.offset == 0
    assert check_claims(graph, cert.claims, k33, cert.back_map) == []


def test_pec_of_petersen_has_two_odd_cycles():
    petersen = named_source("petersen")
    cert = to_2regular_pec(petersen).certificate
    assert (cert.cycle_count, cert.odd_cycle_count) == (2, 2)


def test_pec_rejects_invalid_source():
    with pytest.raises(PreconditionError):
        to_2regular_pec(CubicSource.from_networkx("k4", nx.complete_graph(4)))


def test_cycles_are_traced_from_lowest_vertex(c6_three_colors):
    assert cycles_of(c6_three_colors) == [[1, 2, 3, 4, 5, 6]]


def test_cycles_reject_paths(p6_alternating):
    with pytest.raises(PreconditionError):
        cycles_of(p6_alternating)


# ============================================================================
# stage construction tests
# ============================================================================


def test_stage_formulas_over_catalog():
    for name in source_names():
        source = named_source(name)
        path = generate("path", source).output
        c = path.certificate.cycle_count
        assert path.graph.edge_count == source.vertex_count + 3 * c + 4
        assert path.certificate.offset == c + 2

        lf = generate("lf-p6", source).output
        o = lf.certificate.odd_cycle_count
        components = len(analyze(lf.graph).components)
        assert 2 * components == source.vertex_count + o
        assert lf.certificate.offset == components


def test_structural_claims_hold_over_catalog():
    for name in source_names():
        source = named_source(name)
        for target in target_names():
            out = generate(target, source).output
            failed = check_claims(
                out.graph, out.certificate.claims, source, out.certificate.back_map
            )
            assert failed == [], (name, target)


def test_lf_p5_shape(k33):
    out = generate("lf-p5", k33).output
    report = analyze(out.graph)
    assert out.graph.edge_count == 18
    assert len(report.components) == 6
    assert out.certificate.offset == 6


def test_bip_p4_rejects_non_p4_components(c6_three_colors):
    with pytest.raises(PreconditionError):
        to_bip_p4(c6_three_colors)


def test_bip_p4_closes_each_path():
    lf = parse_instance("p cgraph 4 3\ne 1 2 a\ne 2 3 b\ne 3 4 c\n")
    out = to_bip_p4(lf).graph
    assert out.edge_count == 4
    assert out.label(out.edge_id(1, 4)) == "b"


def test_tree_p8_rejects_long_paths(colored_path):
    with pytest.raises(PreconditionError) as exc:
        to_tree_p8(colored_path("abcde"))
    assert "too long" in exc.value.message


def test_tree_p8_rejects_cycles(c6_three_colors):
    with pytest.raises(PreconditionError):
        to_tree_p8(c6_three_colors)


def test_tree_p8_hub_and_pendant(colored_path):
    out = to_tree_p8(colored_path("abcd")).graph
    # middle of 1-2-3-4-5 is 3; hub 6, pendant 7
    assert out.has_edge(3, 6)
    assert out.has_edge(6, 7)
    assert out.edge_count == 6


def test_generate_rejects_unknown_target(k33):
    with pytest.raises(PreconditionError):
        generate("nope", k33)


def test_generate_from_needs_colored_stage(p6_alternating):
    with pytest.raises(PreconditionError):
        generate_from("pec", p6_alternating, "x")


def test_generate_from_applies_single_stage(c6_three_colors):
    out = generate_from("path", c6_three_colors, "c6")
    assert out.certificate.source == "c6"
    assert out.graph.edge_count == 6 + 3 + 4


# ============================================================================
# run_chain() tests
# ============================================================================


def test_chain_of_k33():
    stages = run_chain(named_source("k33"))
    assert [s.name for s in stages] == target_names()
    assert [s.verdict.output_optimum for s in stages] == [3, 4, 6, 9, 9, 6, 7]
    assert all(s.verdict.ok for s in stages)
    assert all(s.verdict.identity_checked for s in stages)
