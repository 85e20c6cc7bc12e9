"""Command-line entry point and scenario files."""

from .cli import build_parser, main, parse_xy_polynomial, run
from .scenario import OutputSpec, Scenario, SourceSpec

__all__ = [
    "OutputSpec",
    "Scenario",
    "SourceSpec",
    "build_parser",
    "main",
    "parse_xy_polynomial",
    "run",
]
