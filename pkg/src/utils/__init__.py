"""Utility helpers shared by solvers and verification."""

from .cache import Cache

__all__ = ["Cache"]
