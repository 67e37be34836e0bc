"""Subcommand implementations.

Each command takes a validated `RunConfig` and returns the process exit code.
Instances, solutions and reports are written byte-deterministically; logs go
to stderr only.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from ..approx import LocalSearchConfig, approx_mrbm
from ..config.models import RunConfig
from ..corpus import CorpusClass, generate_corpus
from ..domain.color_line import (
    build_color_line,
    check_k7e_free,
    check_k14_free,
    dump_color_line,
)
from ..domain.instance_io import (
    dump_key_values,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from ..domain.models import ColoredGraph
from ..domain.structure import analyze, report_items
from ..domain.validation import validate_solution
from ..gadgets import (
    CubicSource,
    GadgetCertificate,
    generate,
    generate_from,
    named_source,
    run_chain,
    verify_certificate,
)
from ..schemas.errors import InstanceParseError, PreconditionError
from ..solvers import SolveOptions, oracle_mis, oracle_mrbm, solve_auto, solve_with

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_NO_METHOD = 2
EXIT_INPUT = 3


def _read(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as exc:
        raise InstanceParseError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: Path) -> ColoredGraph:
    return parse_instance(_read(path))


def _emit(data: bytes, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)


def _sidecar(cfg: RunConfig, suffix: str) -> Optional[Path]:
    if cfg.report is not None:
        return cfg.report
    if cfg.out is not None:
        return cfg.out.with_name(cfg.out.name + suffix)
    return None


def _write_report(cfg: RunConfig, items: Iterable[Tuple[str, object]]) -> None:
    path = _sidecar(cfg, ".report")
    if path is not None:
        _emit(dump_key_values(items), path)


def _options(cfg: RunConfig) -> SolveOptions:
    return SolveOptions(
        oracle_cap=cfg.cap,
        allow_oversize=cfg.allow_oversize,
        threads=cfg.threads,
        p5_kernel=cfg.p5_kernel.as_flag(),
    )


def cmd_solve(cfg: RunConfig) -> int:
    """Solve exactly with the selected method and write the solution."""
    graph = _load(cfg.instance)
    result = solve_with(cfg.selected_method, graph, _options(cfg))
    _emit(serialize_solution(graph, result.matching.edge_ids), cfg.out)
    _write_report(cfg, result.report_items())
    logger.info(
        "solve method=%s optimum=%d branches=%d",
        result.method.value,
        result.size,
        result.branch_count,
    )
    return EXIT_OK


def cmd_approx(cfg: RunConfig) -> int:
    """Run the local search; with ``--compare-oracle`` also report the optimum."""
    graph = _load(cfg.instance)
    result = approx_mrbm(graph, LocalSearchConfig(swap_size=cfg.swap_size))
    optimum: Optional[int] = None
    if cfg.compare_oracle:
        optimum = solve_auto(graph, _options(cfg)).size
    _emit(serialize_solution(graph, result.matching.edge_ids), cfg.out)
    _write_report(cfg, result.report_items(optimum))
    return EXIT_OK


def cmd_analyze(cfg: RunConfig) -> int:
    """Write the structure report, optionally with the color-line dump."""
    graph = _load(cfg.instance)
    report = analyze(graph)
    items: List[Tuple[str, object]] = list(report_items(report))
    if cfg.color_line:
        cl = build_color_line(graph)
        items.extend(("color_line." + k, v) for k, v in dump_color_line(cl))
        claw = check_k14_free(cl)
        items.append(("color_line.k14_free", claw.ok))
        items.append(("color_line.k14_witness", claw.witness))
        if report.properly_colored:
            k7e = check_k7e_free(cl)
            items.append(("color_line.k7e_free", k7e.ok))
            items.append(("color_line.k7e_witness", k7e.witness))
    _emit(dump_key_values(items), cfg.out)
    return EXIT_OK


def cmd_generate(cfg: RunConfig) -> int:
    """Generate a gadget instance and its certificate."""
    if cfg.named is not None:
        output = generate(cfg.target, named_source(cfg.named)).output
    else:
        path = cfg.instance
        output = generate_from(cfg.target, _load(path), path.stem)
    _emit(serialize_instance(output.graph), cfg.out)
    cert_path = cfg.certificate or _sidecar(cfg, ".cert")
    if cert_path is not None:
        _emit(output.certificate.to_key_values(), cert_path)
    logger.info(
        "gen target=%s vertices=%d edges=%d offset=%d",
        cfg.target,
        output.graph.vertex_count,
        output.graph.edge_count,
        output.certificate.offset,
    )
    return EXIT_OK


def _verify_solution(cfg: RunConfig) -> int:
    graph = _load(cfg.instance)
    ids = parse_solution(graph, _read(cfg.solution))
    verdict = validate_solution(graph, ids)
    items: List[Tuple[str, object]] = [
        ("ok", verdict.ok),
        ("size", len(set(ids))),
    ]
    items.extend(
        (f"violation.{i}", [v.kind, v.first, v.second])
        for i, v in enumerate(verdict.violations)
    )
    _emit(dump_key_values(items), cfg.out)
    return EXIT_OK if verdict.ok else EXIT_VERIFICATION


def _verify_certificate(cfg: RunConfig) -> int:
    output = _load(cfg.instance)
    cert = GadgetCertificate.from_key_values(_read(cfg.certificate))
    source: ColoredGraph | CubicSource
    if cfg.named is not None:
        source = named_source(cfg.named)
    else:
        source = _load(cfg.source)
    verdict = verify_certificate(
        source, output, cert, cap=cfg.cap, structure_only_above_cap=True
    )
    _emit(dump_key_values(verdict.report_items()), cfg.out)
    return EXIT_OK if verdict.ok else EXIT_VERIFICATION


def _verify_chain(cfg: RunConfig) -> int:
    stages = run_chain(named_source(cfg.chain), cap=cfg.cap)
    items: List[Tuple[str, object]] = [("source", cfg.chain)]
    for stage in stages:
        items.append((f"{stage.name}.edges", stage.output.graph.edge_count))
        items.append((f"{stage.name}.offset", stage.output.certificate.offset))
        items.extend(stage.verdict.report_items())
    ok = all(stage.verdict.ok for stage in stages)
    items.append(("ok", ok))
    _emit(dump_key_values(items), cfg.out)
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_verify(cfg: RunConfig) -> int:
    """Check a solution, a single certificate or a whole gadget chain."""
    if cfg.solution is not None:
        return _verify_solution(cfg)
    if cfg.certificate is not None:
        return _verify_certificate(cfg)
    return _verify_chain(cfg)


def cmd_oracle(cfg: RunConfig) -> int:
    """Exhaustive optimum: MRBM of an instance or MIS of a named cubic source."""
    if cfg.named is not None:
        source = named_source(cfg.named)
        chosen = oracle_mis(
            source.to_networkx(), cap=cfg.cap, allow_oversize=cfg.allow_oversize
        )
        _emit(
            dump_key_values(
                [("source", source.name), ("mis", len(chosen)), ("vertices", chosen)]
            ),
            cfg.out,
        )
        return EXIT_OK
    graph = _load(cfg.instance)
    result = oracle_mrbm(graph, cap=cfg.cap, allow_oversize=cfg.allow_oversize)
    _emit(serialize_solution(graph, result.matching.edge_ids), cfg.out)
    _write_report(cfg, result.report_items())
    return EXIT_OK


def cmd_corpus(cfg: RunConfig) -> int:
    """Write ``count`` seeded instances of one class into the ``--out`` dir."""
    try:
        kind = CorpusClass(cfg.corpus_class)
    except ValueError:
        raise PreconditionError(
            f"unknown corpus class '{cfg.corpus_class}'",
            {"known": [c.value for c in CorpusClass]},
        ) from None
    corpus = generate_corpus(kind, cfg.count, cfg.seed, max_edges=cfg.max_edges)
    cfg.out.mkdir(parents=True, exist_ok=True)
    for idx, graph in enumerate(corpus):
        (cfg.out / f"{kind.value}-{idx:04d}.cg").write_bytes(serialize_instance(graph))
    logger.info("corpus class=%s count=%d seed=%d", kind.value, cfg.count, cfg.seed)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "solve": cmd_solve,
    "approx": cmd_approx,
    "analyze": cmd_analyze,
    "gen": cmd_generate,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "corpus": cmd_corpus,
}
