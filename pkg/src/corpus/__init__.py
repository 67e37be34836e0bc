"""Seeded instance corpora for solver cross-checks."""

from .generators import (
    CorpusClass,
    exhaustive_forests,
    generate_corpus,
    random_instance,
)

__all__ = [
    "CorpusClass",
    "exhaustive_forests",
    "generate_corpus",
    "random_instance",
]
