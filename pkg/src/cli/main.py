"""Command-line entry point ``rbm``.

Usage
-----
    rbm solve [--method p7tree] instance.cg [--out sol.txt]
    rbm approx --swap 3 --compare-oracle instance.cg
    rbm analyze --color-line instance.cg
    rbm gen --target path --named k33 --out path.cg
    rbm verify --chain k33
    rbm oracle --named petersen
    rbm corpus --class p7tree --count 50 --seed 7 --out corpus/

Exit codes: 0 ok, 1 verification failure, 2 no applicable exact method or
oracle cap exceeded, 3 input error. Failures print one line
``error: <json>`` on stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, NoReturn, Optional, Sequence

import orjson
from pydantic import ValidationError

from ..config.models import (
    METHODS,
    EnvSettings,
    KernelMode,
    RunConfig,
    ToolkitConfig,
    resolve_defaults,
)
from ..observability import LEVELS, resolve_level, setup_logging
from ..schemas.errors import (
    ErrorCode,
    ErrorDetails,
    ErrorResponse,
    InvariantViolation,
    NoExactMethodError,
    RainbowError,
    SizeCapExceeded,
    UsageError,
    VerificationError,
)
from .commands import (
    COMMANDS,
    EXIT_INPUT,
    EXIT_NO_METHOD,
    EXIT_VERIFICATION,
)

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage problems as `UsageError`."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message, {"usage": self.format_usage().strip()})


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="Path to JSON toolkit config")
    common.add_argument(
        "--log-level",
        dest="log_level",
        type=str.upper,
        choices=LEVELS,
        help="Logging level (overrides environment)",
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Increase verbosity (once sets DEBUG)",
    )
    common.add_argument("--out", type=Path, help="Output file (default stdout)")
    common.add_argument("--report", type=Path, help="Report file")
    common.add_argument("--cap", type=int, help="Oracle size cap")
    common.add_argument(
        "--allow-oversize",
        action="store_true",
        help="Run the oracle above its cap (logged as a warning)",
    )
    common.add_argument("--threads", type=int, help="Branch evaluation threads")

    parser = _Parser(prog="rbm", description="Maximum rainbow matching toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    solve = sub.add_parser("solve", parents=[common], help="Exact solution")
    solve.add_argument("instance", type=Path)
    solve.add_argument(
        "--method",
        action="append",
        dest="methods",
        default=[],
        help=f"Exact method: {', '.join(METHODS)} (default auto)",
    )
    solve.add_argument(
        "--p5-kernel",
        dest="p5_kernel",
        choices=[m.value for m in KernelMode],
        help="Kernel pruning for the P5-free solver",
    )

    approx = sub.add_parser("approx", parents=[common], help="Local search")
    approx.add_argument("instance", type=Path)
    approx.add_argument("--swap", type=int, dest="swap_size", help="Swap size t")
    approx.add_argument(
        "--compare-oracle",
        action="store_true",
        help="Also compute the exact optimum for the report",
    )

    analyze = sub.add_parser("analyze", parents=[common], help="Structure report")
    analyze.add_argument("instance", type=Path)
    analyze.add_argument(
        "--color-line",
        action="store_true",
        help="Include the color-line graph and its forbidden-subgraph checks",
    )

    gen = sub.add_parser("gen", parents=[common], help="Gadget generator")
    gen.add_argument("instance", type=Path, nargs="?")
    gen.add_argument("--target", required=True)
    gen.add_argument("--named", help="Catalog cubic source")
    gen.add_argument("--certificate", type=Path, help="Certificate file")

    verify = sub.add_parser("verify", parents=[common], help="Verification")
    verify.add_argument("instance", type=Path, nargs="?")
    verify.add_argument("--solution", type=Path)
    verify.add_argument("--certificate", type=Path)
    verify.add_argument("--source", type=Path, help="Source instance file")
    verify.add_argument("--named", help="Catalog cubic source")
    verify.add_argument("--chain", help="Build and verify the chain of a source")

    oracle = sub.add_parser("oracle", parents=[common], help="Exhaustive optimum")
    oracle.add_argument("instance", type=Path, nargs="?")
    oracle.add_argument("--named", help="Catalog cubic source (MIS)")

    corpus = sub.add_parser("corpus", parents=[common], help="Seeded instances")
    corpus.add_argument("--class", dest="corpus_class", required=True)
    corpus.add_argument("--count", type=int, default=10)
    corpus.add_argument("--seed", type=int)
    corpus.add_argument("--max-edges", dest="max_edges", type=int, default=25)
    return parser


def _run_config(args: argparse.Namespace, defaults: EnvSettings) -> RunConfig:
    def pick(name: str, fallback):
        value = getattr(args, name, None)
        return fallback if value is None else value

    instance = getattr(args, "instance", None)
    return RunConfig(
        subcommand=args.subcommand,
        inputs=[instance] if instance is not None else [],
        out=args.out,
        report=args.report,
        methods=getattr(args, "methods", []),
        swap_size=pick("swap_size", defaults.swap_size),
        cap=pick("cap", defaults.oracle_cap),
        allow_oversize=args.allow_oversize,
        threads=pick("threads", defaults.threads),
        seed=getattr(args, "seed", None),
        compare_oracle=getattr(args, "compare_oracle", False),
        p5_kernel=pick("p5_kernel", defaults.p5_kernel),
        target=getattr(args, "target", None),
        named=getattr(args, "named", None),
        certificate=getattr(args, "certificate", None),
        solution=getattr(args, "solution", None),
        source=getattr(args, "source", None),
        chain=getattr(args, "chain", None),
        color_line=getattr(args, "color_line", False),
        corpus_class=getattr(args, "corpus_class", None),
        count=getattr(args, "count", 10),
        max_edges=getattr(args, "max_edges", 25),
    )


def _report_error(response: ErrorResponse) -> None:
    line = orjson.dumps(response.model_dump(mode="json", exclude_none=True))
    sys.stderr.write("error: " + line.decode("utf-8") + "\n")


def _exit_code(exc: RainbowError) -> int:
    if isinstance(exc, (NoExactMethodError, SizeCapExceeded)):
        return EXIT_NO_METHOD
    if isinstance(exc, (VerificationError, InvariantViolation)):
        return EXIT_VERIFICATION
    return EXIT_INPUT


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI entrypoint; returns the exit code."""
    args_list: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(args_list)
        env = EnvSettings()
        setup_logging(resolve_level(args.log_level, args.verbose, env.log_level))
        file_config = ToolkitConfig.load(Path(args.config)) if args.config else None
        cfg = _run_config(args, resolve_defaults(env, file_config))
        return COMMANDS[cfg.subcommand](cfg)
    except RainbowError as exc:
        _report_error(exc.to_response())
        return _exit_code(exc)
    except ValidationError as exc:
        _report_error(
            ErrorResponse(
                error=ErrorDetails(
                    code=ErrorCode.INPUT_ERROR,
                    message="invalid configuration",
                    details={
                        "errors": [
                            {"loc": [str(p) for p in e["loc"]], "msg": e["msg"]}
                            for e in exc.errors()
                        ]
                    },
                )
            )
        )
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        _report_error(
            ErrorResponse(
                error=ErrorDetails(code=ErrorCode.INPUT_ERROR, message=str(exc))
            )
        )
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
