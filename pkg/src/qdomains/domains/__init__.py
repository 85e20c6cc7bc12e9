"""Polynomial conformal maps, their moments and the moment inverse problem."""

from .conformal_map import (
    MIN_SPEED_RATIO,
    ROOT_MARGIN,
    ConformalMap,
    UnivalenceReport,
    univalence_check,
)
from .moments import MomentVector, moments, reduced_moment, solve_map_from_moments

__all__ = [
    "ConformalMap",
    "MIN_SPEED_RATIO",
    "MomentVector",
    "ROOT_MARGIN",
    "UnivalenceReport",
    "moments",
    "reduced_moment",
    "solve_map_from_moments",
    "univalence_check",
]
