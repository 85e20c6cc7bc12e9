"""Scenario files for the ``grow`` and ``path-check`` commands."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal

from pydantic import Field, model_validator

from .._types import ExactComplex, ExactReal
from ..base import BaseSchema
from ..growth.growth import SchedulePiece, SourceSchedule
from ..intertwine.media import MediumSpec

OutputFormat = Literal["jsonl", "csv"]


class SourceSpec(BaseSchema):
    """Source location and the number k̃ of multipole fluxes it injects."""

    _emit_type = False

    z1: ExactComplex
    degree: int = Field(default=0, ge=0, description="Map degree k̃; multipole rates beyond it are rejected.")


class OutputSpec(BaseSchema):
    _emit_type = False

    times: list[ExactReal] = Field(default_factory=list)
    boundary_samples: int = Field(default=0, ge=0, description="Points per CSV polyline; 0 disables CSV.")
    formats: list[OutputFormat] = Field(default_factory=lambda: ["jsonl"])


class Scenario(BaseSchema):
    """Medium, source, injection schedule and requested outputs.

    Examples
    --------
    >>> scenario = Scenario.model_validate({
    ...     "medium": "axis:1",
    ...     "source": {"z1": ["2", "0"]},
    ...     "schedule": [{"t_start": "0", "t_end": "1", "q": "1"}],
    ...     "outputs": {"times": ["1/2", "1"]},
    ... })
    >>> scenario.medium.key()
    'axis:1'
    """

    _emit_type = False

    medium: MediumSpec
    source: SourceSpec
    schedule: list[SchedulePiece] = Field(default_factory=list)
    outputs: OutputSpec = Field(default_factory=OutputSpec)

    @model_validator(mode="after")
    def _rates_fit_degree(self):
        for piece in self.schedule:
            if len(piece.qj) > self.source.degree:
                raise ValueError(
                    f"Schedule piece starting at t = {piece.t_start} carries "
                    f"{len(piece.qj)} multipole rates but the source degree is "
                    f"{self.source.degree}."
                )
        return self

    def source_schedule(self) -> SourceSchedule:
        """Schedule with every piece padded to ``source.degree`` multipole rates."""
        degree = self.source.degree
        pieces = [
            SchedulePiece(
                t_start=piece.t_start,
                t_end=piece.t_end,
                q=piece.q,
                qj=list(piece.qj) + [0] * (degree - len(piece.qj)),
            )
            for piece in self.schedule
        ]
        return SourceSchedule(z1=self.source.z1, pieces=pieces)

    @classmethod
    def load(cls, path: str | Path) -> Scenario:
        """Read and validate a JSON scenario file."""
        with open(path, encoding="utf-8") as handle:
            return cls.model_validate(json.load(handle))


__all__ = ["OutputSpec", "Scenario", "SourceSpec"]
