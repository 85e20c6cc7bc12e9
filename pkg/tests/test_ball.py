import math

import pytest
from pydantic import ValidationError
from sympy import QQ

from qdomains.algebra import gaussrat
from qdomains.fluxes import fluxes_for_map
from qdomains.verify import (
    BallSpec,
    ball_identity_check,
    harmonic_basis,
    harmonic_projection,
    parse_polynomial,
)
from qdomains.verify.ball import ball_ring, laplacian


@pytest.fixture
def ball():
    return BallSpec(d=3, r=1, center=[2, 0, 0])


def test_volume(ball):
    assert ball.volume() == pytest.approx(4 * math.pi / 3)
    assert BallSpec(d=2, r=2, center=[1, 0]).volume() == pytest.approx(4 * math.pi)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"d": 3, "r": 1, "center": [2, 0]},
        {"d": 3, "r": 1, "center": [0, 1, 0]},
        {"d": 3, "r": 0, "center": [2, 0, 0]},
        {"d": 1, "r": 1, "center": [2]},
    ],
)
def test_invalid_balls(kwargs):
    with pytest.raises(ValidationError):
        BallSpec(**kwargs)


def test_harmonic_projection_of_square():
    R = ball_ring(3)
    xi1, xi2, xi3 = R.gens
    projected = harmonic_projection(xi1**2)
    assert projected == xi1**2 - (xi1**2 + xi2**2 + xi3**2) * QQ(1, 3)
    assert harmonic_projection(xi1 * xi2) == xi1 * xi2


def test_harmonic_basis_spans_degree_four():
    basis = harmonic_basis(3, 4)
    assert all(not laplacian(h) for h in basis)
    # dimension of harmonic polynomials of degree ≤ 4 in three variables
    assert len(basis) >= 25


def test_identity_for_saddle(ball):
    report = ball_identity_check(ball, "xi1**2 - xi2**2")
    assert report.passed
    assert report.rel_error <= 1e-8
    assert report.h == "xi1**2 - xi2**2"


def test_identity_for_basis(ball):
    reports = [ball_identity_check(ball, h) for h in harmonic_basis(3, 4)]
    assert all(report.passed for report in reports), [
        report.to_config() for report in reports if not report.passed
    ]


@pytest.mark.parametrize("center", [[2, 0], ["3/2", "1/2"], [-3, 1]])
def test_identity_in_the_plane(center):
    spec = BallSpec(d=2, r="1/2", center=center)
    assert all(ball_identity_check(spec, h).passed for h in harmonic_basis(2, 5))


def test_planar_coefficient_matches_disk_flux(axis_one, unit_disk_at_two):
    solution = fluxes_for_map(axis_one, unit_disk_at_two)
    d, r, c1 = 2, 1, 2
    assert solution.Qj[0] == gaussrat(QQ(r**2, (d + 2) * c1)) * solution.Q


def test_non_harmonic_input_is_rejected(ball):
    with pytest.raises(ValueError):
        ball_identity_check(ball, "xi1**2")
    with pytest.raises(ValueError):
        ball_identity_check(ball, parse_polynomial("xi1", 2))


def test_parse_polynomial_rejects_unknown_symbols():
    with pytest.raises(ValueError):
        parse_polynomial("xi4 + 1", 3)
    with pytest.raises(ValueError):
        parse_polynomial("xi1 +* 2", 3)
