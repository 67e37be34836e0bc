"""Instances, solutions, structure analysis and the color-line graph."""

from .instance_io import parse_instance, parse_solution, serialize_instance
from .models import ColoredGraph, RainbowMatching, StructureReport
from .structure import analyze
from .validation import validate_solution

__all__ = [
    "ColoredGraph",
    "RainbowMatching",
    "StructureReport",
    "analyze",
    "parse_instance",
    "parse_solution",
    "serialize_instance",
    "validate_solution",
]
