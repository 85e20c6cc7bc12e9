"""Source schedules, time evolution and path independence."""

from .growth import (
    ConservationReport,
    Frame,
    PathReport,
    SchedulePiece,
    SourceSchedule,
    conserved_functional_check,
    evolve,
    path_independence_check,
)

__all__ = [
    "ConservationReport",
    "Frame",
    "PathReport",
    "SchedulePiece",
    "SourceSchedule",
    "conserved_functional_check",
    "evolve",
    "path_independence_check",
]
