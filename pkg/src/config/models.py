"""Config models and loader.

Three layers feed a run, highest precedence first: command-line flags
(`RunConfig`), an optional JSON file (`ToolkitConfig`) and the environment
(`EnvSettings`, ``RBM_`` prefix, ``.env`` supported). JSON parsing prefers
`orjson` when available and falls back to the standard library `json`.
"""

from __future__ import annotations

import json as _json
from enum import Enum
from pathlib import Path
from typing import Any, Callable, List, Optional

try:
    import orjson as _orjson_mod  # type: ignore[assignment]
except ImportError:  # pragma: no cover - optional dependency
    _orjson_mod = None  # type: ignore[assignment]
    _loads_orjson: Optional[Callable[[bytes], Any]] = None
else:

    def _loads_orjson(buf: bytes) -> Any:
        loader = getattr(_orjson_mod, "loads")  # type: ignore[assignment]
        return loader(buf)


from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..solvers.models import DEFAULT_ORACLE_CAP

METHODS = ("auto", "brute", "p4", "p5fpt", "p7tree", "p7forest")
SUBCOMMANDS = ("solve", "approx", "analyze", "gen", "verify", "oracle", "corpus")


class KernelMode(str, Enum):
    """Whether the P5-free FPT solver prunes star edges to the kernel."""

    AUTO = "auto"
    ON = "on"
    OFF = "off"

    def as_flag(self) -> Optional[bool]:
        return None if self is KernelMode.AUTO else self is KernelMode.ON


class ToolkitConfig(BaseModel):
    """Solver defaults read from a JSON file.

    Attributes
    ----------
    oracle_cap: Optional[int]
        Largest edge (or vertex) count the exhaustive oracles accept.
    swap_size: Optional[int]
        Default local-search swap size.
    threads: Optional[int]
        Worker threads for branch evaluation.
    p5_kernel: Optional[KernelMode]
        Kernel pruning mode for the P5-free solver.

    Unset fields defer to the environment.
    """

    model_config = ConfigDict(extra="forbid")

    oracle_cap: Optional[int] = Field(None, ge=1)
    swap_size: Optional[int] = Field(None, ge=0)
    threads: Optional[int] = Field(None, ge=1)
    p5_kernel: Optional[KernelMode] = None

    @staticmethod
    def load(path: Path) -> "ToolkitConfig":
        """Load toolkit defaults from a JSON file."""
        raw = path.read_bytes()
        if _loads_orjson is not None:
            data = _loads_orjson(raw)
        else:
            data = _json.loads(raw.decode("utf-8"))
        return ToolkitConfig.model_validate(data)


class EnvSettings(BaseSettings):
    """Environment-driven settings and .env support.

    Attributes
    ----------
    log_level: str
        Logging level name (e.g., "DEBUG", "INFO"). Defaults to "INFO".
    oracle_cap: int
        Exhaustive oracle cap. Defaults to 30.
    swap_size: int
        Local-search swap size. Defaults to 2.
    threads: int
        Branch evaluation threads. Defaults to 1.
    p5_kernel: KernelMode
        Kernel pruning for the P5-free solver. Defaults to "auto".
    """

    model_config = SettingsConfigDict(env_file=".env", env_prefix="RBM_")

    log_level: str = Field("INFO")
    oracle_cap: int = Field(DEFAULT_ORACLE_CAP, ge=1)
    swap_size: int = Field(2, ge=0)
    threads: int = Field(1, ge=1)
    p5_kernel: KernelMode = KernelMode.AUTO


class RunConfig(BaseModel):
    """Validated flags of one CLI invocation.

    Construction fails before any file is read when flags conflict or a
    subcommand is missing what it needs. Solver knobs arrive here already
    resolved against the JSON file and the environment.
    """

    model_config = ConfigDict(frozen=True)

    subcommand: str
    inputs: List[Path] = Field(default_factory=list)
    out: Optional[Path] = None
    report: Optional[Path] = None
    methods: List[str] = Field(default_factory=list)
    swap_size: int = Field(2, ge=0)
    cap: int = Field(DEFAULT_ORACLE_CAP, ge=1)
    allow_oversize: bool = False
    threads: int = Field(1, ge=1)
    seed: Optional[int] = Field(None, ge=0, lt=2**64)
    compare_oracle: bool = False
    p5_kernel: KernelMode = KernelMode.AUTO
    # gen / verify / oracle
    target: Optional[str] = None
    named: Optional[str] = None
    certificate: Optional[Path] = None
    solution: Optional[Path] = None
    source: Optional[Path] = None
    chain: Optional[str] = None
    color_line: bool = False
    # corpus
    corpus_class: Optional[str] = None
    count: int = Field(10, ge=1)
    max_edges: int = Field(25, ge=1)

    @model_validator(mode="after")
    def _check_flags(self) -> "RunConfig":
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand '{self.subcommand}'")
        if len(set(self.methods)) > 1:
            raise ValueError(
                f"method selectors are mutually exclusive: {', '.join(self.methods)}"
            )
        for method in self.methods:
            if method not in METHODS:
                raise ValueError(
                    f"unknown method '{method}' (choose from {', '.join(METHODS)})"
                )
        if self.methods and self.subcommand != "solve":
            raise ValueError("--method only applies to solve")
        if self.compare_oracle and self.subcommand != "approx":
            raise ValueError("--compare-oracle only applies to approx")
        needs_input = ("solve", "approx", "analyze")
        if self.subcommand in needs_input and len(self.inputs) != 1:
            raise ValueError(f"{self.subcommand} requires one instance path")
        if self.subcommand == "corpus":
            if self.seed is None:
                raise ValueError("corpus requires --seed")
            if self.corpus_class is None or self.out is None:
                raise ValueError("corpus requires --class and --out")
        if self.subcommand == "gen":
            if self.target is None:
                raise ValueError("gen requires --target")
            if (self.named is None) == (not self.inputs):
                raise ValueError("gen needs exactly one of --named or an instance")
        if self.subcommand == "oracle" and (self.named is None) == (not self.inputs):
            raise ValueError("oracle needs exactly one of --named or an instance")
        if self.subcommand == "verify":
            self._check_verify()
        return self

    def _check_verify(self) -> None:
        modes = [
            m
            for m, on in (
                ("--solution", self.solution is not None),
                ("--certificate", self.certificate is not None),
                ("--chain", self.chain is not None),
            )
            if on
        ]
        if len(modes) != 1:
            raise ValueError(
                "verify needs exactly one of --solution, --certificate, --chain"
            )
        if modes[0] != "--chain" and len(self.inputs) != 1:
            raise ValueError(f"verify {modes[0]} requires one instance path")
        if modes[0] == "--certificate" and (self.source is None) == (
            self.named is None
        ):
            raise ValueError("verify --certificate needs --source or --named")

    @property
    def selected_method(self) -> str:
        return self.methods[0] if self.methods else "auto"

    @property
    def instance(self) -> Optional[Path]:
        return self.inputs[0] if self.inputs else None


def resolve_defaults(
    env: EnvSettings, file_config: Optional[ToolkitConfig] = None
) -> EnvSettings:
    """Overlay JSON file values on the environment settings."""
    if file_config is None:
        return env
    overrides = file_config.model_dump(exclude_none=True)
    return env.model_copy(update=overrides)
