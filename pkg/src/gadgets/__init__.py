"""Hardness-reduction generators with verifiable certificates."""

from .catalog import (
    CubicSource,
    find_perfect_matching,
    named_source,
    source_names,
    validate_cubic_source,
)
from .certificates import (
    CertificateVerdict,
    Claim,
    GadgetCertificate,
    SourceKind,
    check_claims,
    verify_certificate,
)
from .constructions import (
    ChainStage,
    GadgetOutput,
    generate,
    generate_from,
    run_chain,
    target_names,
    to_2regular_pec,
    to_bip_p4,
    to_complete,
    to_lf_p5,
    to_lf_p6,
    to_path,
    to_tree_p8,
)

__all__ = [
    "CertificateVerdict",
    "ChainStage",
    "Claim",
    "CubicSource",
    "GadgetCertificate",
    "GadgetOutput",
    "SourceKind",
    "check_claims",
    "find_perfect_matching",
    "generate",
    "generate_from",
    "named_source",
    "run_chain",
    "source_names",
    "target_names",
    "to_2regular_pec",
    "to_bip_p4",
    "to_complete",
    "to_lf_p5",
    "to_lf_p6",
    "to_path",
    "to_tree_p8",
    "validate_cubic_source",
    "verify_certificate",
]
