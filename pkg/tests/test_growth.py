import numpy as np
import pytest
from pydantic import ValidationError

from qdomains.algebra import gaussrat, rational, to_complex
from qdomains.domains import moments
from qdomains.errors import NonUnivalent
from qdomains.growth import (
    SchedulePiece,
    SourceSchedule,
    conserved_functional_check,
    evolve,
    path_independence_check,
)
from qdomains.growth import growth as growth_module


def schedule(*pieces, z1=4):
    return SourceSchedule(z1=[z1, 0], pieces=list(pieces))


def piece(t_start, t_end, q, qj=()):
    return SchedulePiece(t_start=t_start, t_end=t_end, q=q, qj=list(qj))


def test_cumulative_fluxes_are_exact():
    s = schedule(piece(0, 1, 2, ["1/3"]), piece(2, 3, "1/2", [[0, 1]]))
    assert s.degree == 1
    assert s.end == rational(3)
    totals = s.cumulative("5/2")
    assert totals.Q == rational("9/4")
    assert totals.Qj == [gaussrat("1/3", "1/2")]
    assert s.cumulative(-1).Q == rational(0)


@pytest.mark.parametrize(
    "pieces",
    [
        [{"t_start": 0, "t_end": 2, "q": 1}, {"t_start": 1, "t_end": 3, "q": 1}],
        [{"t_start": 1, "t_end": 1, "q": 1}],
        [{"t_start": 0, "t_end": 1, "q": -1}],
    ],
)
def test_invalid_schedules(pieces):
    with pytest.raises(ValidationError):
        SourceSchedule(z1=[1, 0], pieces=pieces)


def test_constant_monopole_grows_disks():
    frames = evolve(schedule(piece(0, 4, 1)), "axis:1", [0, 1, 4])
    assert [frame.t for frame in frames] == [rational(1), rational(4)]
    for frame, radius in zip(frames, (1, 2)):
        assert float(frame.conformal_map.r) == pytest.approx(radius, abs=1e-10)
        assert frame.conformal_map.degree == 0
        assert float(frame.medium_fluxes.Q) == pytest.approx(radius**2)
        expected_dipole = radius**4 / 16
        assert to_complex(frame.medium_fluxes.Qj[0]) == pytest.approx(expected_dipole)
    assert frames[0].source_strengths[0] == pytest.approx(1)


def test_frames_reproduce_homogeneous_moments():
    frames = evolve(schedule(piece(0, 2, 1, ["1/10"])), "axis:1", ["1/2", 1, 2])
    for frame in frames:
        reduced = moments(frame.conformal_map, 1).reduced
        t = float(frame.t)
        values = np.array([to_complex(m) for m in reduced])
        np.testing.assert_allclose(values, [t, t / 10], atol=1e-10)
        assert frame.conformal_map.degree == 1


def test_zero_schedule_has_no_frames():
    assert evolve(schedule(), "axis:1", [1, 2]) == []


def test_times_must_increase():
    with pytest.raises(ValueError):
        evolve(schedule(piece(0, 1, 1)), "axis:1", [1, "1/2"])


def test_breakdown_is_bracketed(monkeypatch):
    real_solver = growth_module.solve_map_from_moments

    def solver(targets, **kwargs):
        if targets.reduced[0].x > rational("3/2"):
            raise NonUnivalent("boundary cusps")
        return real_solver(targets, **kwargs)

    monkeypatch.setattr(growth_module, "solve_map_from_moments", solver)
    with pytest.raises(NonUnivalent) as info:
        evolve(schedule(piece(0, 3, 1)), "axis:1", [1, 2, 3])
    lo, hi = info.value.breakdown_time
    assert lo <= 1.5 <= hi
    assert hi - lo <= 1e-6
    assert [frame.t for frame in info.value.frames] == [rational(1)]
    assert info.value.last_frame.t == rational(1)


def test_equal_totals_give_the_same_domain():
    a = schedule(piece(0, 1, 1, ["1/10"]))
    b = schedule(piece(0, "1/2", 1, ["1/5"]), piece("1/2", 1, 1, [0]))
    report = path_independence_check(a, b, "axis:1", 1)
    assert report.totals_equal
    assert report.map_difference <= 1e-10
    assert report.flux_difference <= 1e-10
    assert report.passed


def test_double_rate_half_time():
    a = schedule(piece(0, 1, 1))
    b = schedule(piece(0, "1/2", 2))
    assert path_independence_check(a, b, "axis:2", 1).passed


def test_unequal_totals_fail():
    a = schedule(piece(0, 1, 1, ["1/10"]))
    b = schedule(piece(0, "1/2", 1, ["1/5"]), piece("1/2", 1, 1, ["1/5"]))
    report = path_independence_check(a, b, "axis:1", 1)
    assert not report.totals_equal
    assert not report.passed
    assert report.to_config()["passed"] is False


@pytest.mark.slow
def test_kernel_functionals_vanish_along_frames():
    frames = evolve(schedule(piece(0, 2, 1, ["1/20"])), "axis:1", ["1/2", 1, "3/2", 2])
    report = conserved_functional_check(frames, "axis:1")
    assert len(report.max_ratios) == 4
    assert report.passed
