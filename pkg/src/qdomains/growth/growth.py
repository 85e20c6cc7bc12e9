"""Growth of a domain from a single source in an initially empty medium.

The domain at time t depends only on the cumulative homogeneous fluxes
``Q̃(t), Q̃_j(t)``, so every output time is an independent inverse problem:
cumulative fluxes → moments → polynomial map → medium fluxes. Consecutive
times warm-start Newton from the previous map.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from pydantic import Field, field_validator, model_validator

from .._types import ExactComplex, ExactReal
from ..algebra.field import ZERO, Rat, gaussrat, rational, to_complex
from ..base import BaseSchema
from ..domains.conformal_map import ConformalMap
from ..domains.moments import solve_map_from_moments
from ..errors import NoConvergence, NonUnivalent
from ..fluxes.fluxes import FluxVector, fluxes_for_map, homogeneous_targets, to_source_strengths
from ..intertwine.intertwine import IntertwinerBundle, build_bundle
from ..intertwine.media import Medium
from ..verify.identity import kernel_check

logger = logging.getLogger(__name__)

BREAKDOWN_RESOLUTION = 1e-6
PATH_TOLERANCE = 1e-10
CONSERVATION_TOLERANCE = 1e-8


class SchedulePiece(BaseSchema):
    """Constant injection rates on ``[t_start, t_end]``.

    ``q`` is the rate of the monopole flux ``dQ̃/dt`` and ``qj[j-1]`` the rate
    ``dQ̃_j/dt`` of the j-th multipole flux.
    """

    _emit_type = False

    t_start: ExactReal
    t_end: ExactReal
    q: ExactReal = Field(..., description="Monopole rate; non-negative (injection).")
    qj: list[ExactComplex] = Field(default_factory=list)

    @field_validator("q")
    @classmethod
    def _injection(cls, q):
        if q < 0:
            raise ValueError(f"Suction is not supported; monopole rate {q} is negative.")
        return q

    @model_validator(mode="after")
    def _ordered(self):
        if not self.t_end > self.t_start:
            raise ValueError(
                f"Schedule piece must have t_end > t_start; got [{self.t_start}, {self.t_end}]."
            )
        return self

    def elapsed(self, t) -> Rat:
        """Time spent inside this piece up to ``t``."""
        t = rational(t)
        if t <= self.t_start:
            return rational(0)
        return min(t, self.t_end) - self.t_start


class SourceSchedule(BaseSchema):
    """Time-ordered, non-overlapping injection pieces at the source ``z1``.

    Examples
    --------
    >>> schedule = SourceSchedule(z1=[2, 0], pieces=[{"t_start": 0, "t_end": 1, "q": 1}])
    >>> str(schedule.cumulative("1/2").Q)
    '1/2'
    """

    _emit_type = False

    z1: ExactComplex
    pieces: list[SchedulePiece] = Field(default_factory=list)

    @model_validator(mode="after")
    def _non_overlapping(self):
        for before, after in zip(self.pieces, self.pieces[1:]):
            if after.t_start < before.t_end:
                raise ValueError(
                    f"Schedule pieces overlap or are out of order at t = {after.t_start}."
                )
        return self

    @property
    def degree(self) -> int:
        """Number of multipole fluxes carried by the schedule (the map's k̃)."""
        return max((len(piece.qj) for piece in self.pieces), default=0)

    @property
    def end(self) -> Rat:
        return self.pieces[-1].t_end if self.pieces else rational(0)

    def cumulative(self, t) -> FluxVector:
        """Exact cumulative fluxes ``Q̃(t)`` and ``Q̃_j(t)`` from an empty start."""
        Q = rational(0)
        Qj = [ZERO] * self.degree
        for piece in self.pieces:
            dt = piece.elapsed(t)
            if not dt:
                continue
            Q += piece.q * dt
            step = gaussrat(dt)
            for j, rate in enumerate(piece.qj):
                Qj[j] += rate * step
        return FluxVector(Q=Q, Qj=Qj)


class Frame(BaseSchema):
    """Domain and fluxes at one output time."""

    _emit_type = False

    t: ExactReal
    conformal_map: ConformalMap = Field(..., alias="map")
    homog_fluxes: FluxVector
    medium_fluxes: FluxVector
    source_strengths: list[complex] | None = Field(
        default=None, description="q_j = (−1)^j dQ_j/dt of the medium, estimated across frames."
    )


def _solve_frame(
    schedule: SourceSchedule,
    bundle: IntertwinerBundle,
    t,
    guess: ConformalMap | None,
) -> Frame:
    homog = schedule.cumulative(t)
    conformal_map = solve_map_from_moments(
        homogeneous_targets(homog), guess=guess, z1=schedule.z1
    )
    solution = fluxes_for_map(bundle, conformal_map)
    return Frame(
        t=t, map=conformal_map, homog_fluxes=homog, medium_fluxes=solution.fluxes
    )


def _bisect_breakdown(
    schedule: SourceSchedule,
    bundle: IntertwinerBundle,
    lo,
    hi,
    guess: ConformalMap | None,
    resolution: float,
) -> tuple[float, float]:
    """Shrink ``[lo, hi]`` around the first time the map stops being univalent."""
    lo, hi = rational(lo), rational(hi)
    while float(hi - lo) > resolution:
        mid = (lo + hi) / 2
        try:
            guess = _solve_frame(schedule, bundle, mid, guess).conformal_map
            lo = mid
        except (NonUnivalent, NoConvergence, ValueError):
            hi = mid
    return float(lo), float(hi)


def _with_source_strengths(frames: list[Frame]) -> list[Frame]:
    if len(frames) < 2:
        return frames
    times = np.array([float(frame.t) for frame in frames])
    K = max(frame.medium_fluxes.K for frame in frames)
    series = np.zeros((len(frames), K + 1), dtype=complex)
    for i, frame in enumerate(frames):
        series[i, 0] = float(frame.medium_fluxes.Q)
        for j, q in enumerate(frame.medium_fluxes.Qj, 1):
            series[i, j] = to_complex(q)
    rates = np.gradient(series, times, axis=0)
    return [
        frame.model_copy(update={"source_strengths": to_source_strengths(list(row))})
        for frame, row in zip(frames, rates)
    ]


def evolve(
    schedule: SourceSchedule,
    medium: Medium | str,
    times: Sequence,
    warm_start: bool = True,
    breakdown_resolution: float = BREAKDOWN_RESOLUTION,
) -> list[Frame]:
    """Frames at each output time, in time order.

    Times at which nothing has been injected yet produce no frame.

    Raises
    ------
    ValueError
        If ``times`` is not strictly increasing.
    NonUnivalent
        At the first time the domain leaves the univalent regime; carries the
        frames solved so far and the bracketed breakdown time.
    NoConvergence
        If a moment inversion fails for another reason.
    """
    times = [rational(t) for t in times]
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("Output times must be strictly increasing.")
    bundle = build_bundle(medium)
    frames: list[Frame] = []
    guess = None
    last_valid = rational(0)
    for t in times:
        if not schedule.cumulative(t).Q:
            logger.debug("Nothing injected by t = %s; no frame", t)
            continue
        try:
            frame = _solve_frame(schedule, bundle, t, guess if warm_start else None)
        except NonUnivalent as err:
            bracket = _bisect_breakdown(
                schedule, bundle, last_valid, t, guess, breakdown_resolution
            )
            logger.info("Univalence lost between t = %.7g and t = %.7g", *bracket)
            raise NonUnivalent(
                f"Domain stops being univalent between t = {bracket[0]:.7g} and {bracket[1]:.7g}.",
                report=err.report,
                frames=_with_source_strengths(frames),
                breakdown_time=bracket,
            ) from err
        logger.info("Solved frame t = %s (M0/π = %s)", t, frame.homog_fluxes.Q)
        frames.append(frame)
        guess, last_valid = frame.conformal_map, t
    return _with_source_strengths(frames)


class PathReport(BaseSchema):
    """Comparison of the final states reached by two schedules."""

    _emit_type = False

    t_final: ExactReal
    totals_equal: bool
    map_difference: float
    flux_difference: float
    tolerance: float = PATH_TOLERANCE

    @property
    def passed(self) -> bool:
        return (
            self.totals_equal
            and self.map_difference <= self.tolerance
            and self.flux_difference <= self.tolerance
        )

    def to_config(self) -> dict:
        config = super().to_config()
        config["passed"] = self.passed
        return config


def _padded_difference(a: np.ndarray, b: np.ndarray) -> float:
    n = max(len(a), len(b))
    a = np.pad(a, (0, n - len(a)))
    b = np.pad(b, (0, n - len(b)))
    return float(np.max(np.abs(a - b))) if n else 0.0


def _flux_array(fluxes: FluxVector) -> np.ndarray:
    return np.array([float(fluxes.Q), *(to_complex(q) for q in fluxes.Qj)], dtype=complex)


def path_independence_check(
    schedule_a: SourceSchedule,
    schedule_b: SourceSchedule,
    medium: Medium | str,
    t_final,
    tolerance: float = PATH_TOLERANCE,
) -> PathReport:
    """Grow both schedules to ``t_final`` and compare maps and medium fluxes.

    Schedules with different cumulative fluxes fail the check.
    """
    t_final = rational(t_final)
    (frame_a,) = evolve(schedule_a, medium, [t_final])
    (frame_b,) = evolve(schedule_b, medium, [t_final])
    totals_equal = (
        schedule_a.z1 == schedule_b.z1
        and frame_a.homog_fluxes.to_config() == frame_b.homog_fluxes.to_config()
    )
    report = PathReport(
        t_final=t_final,
        totals_equal=totals_equal,
        map_difference=_padded_difference(
            frame_a.conformal_map.complex_coefficients(),
            frame_b.conformal_map.complex_coefficients(),
        ),
        flux_difference=_padded_difference(
            _flux_array(frame_a.medium_fluxes), _flux_array(frame_b.medium_fluxes)
        ),
        tolerance=tolerance,
    )
    if not totals_equal:
        logger.warning("Schedules reach different cumulative fluxes at t = %s", t_final)
    return report


class ConservationReport(BaseSchema):
    """Kernel-functional integrals for every frame of an evolution."""

    _emit_type = False

    times: list[ExactReal]
    max_ratios: list[float]
    tolerance: float = CONSERVATION_TOLERANCE

    @property
    def passed(self) -> bool:
        return max(self.max_ratios, default=0.0) <= self.tolerance

    def to_config(self) -> dict:
        config = super().to_config()
        config["passed"] = self.passed
        return config


def conserved_functional_check(
    frames: Sequence[Frame],
    medium: Medium | str,
    combinations: int = 5,
    seed: int = 0,
    tolerance: float = CONSERVATION_TOLERANCE,
) -> ConservationReport:
    """``∫_Ω φ`` stays at zero along the frames for solutions ``φ`` that the
    frame's flux functional annihilates."""
    bundle = build_bundle(medium)
    ratios = []
    for frame in frames:
        solution = fluxes_for_map(bundle, frame.conformal_map)
        report = kernel_check(
            frame.conformal_map,
            bundle,
            solution,
            combinations=combinations,
            seed=seed,
            tolerance=tolerance,
        )
        ratios.append(max(report.ratios, default=0.0))
    return ConservationReport(
        times=[frame.t for frame in frames], max_ratios=ratios, tolerance=tolerance
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
