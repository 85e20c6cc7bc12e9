import math

import pytest

from qdomains.algebra import POLY2, Z, gaussrat
from qdomains.domains import ConformalMap
from qdomains.errors import NoConvergence
from qdomains.fluxes import fluxes_for_map
from qdomains.intertwine import build_bundle
from qdomains.verify import (
    evaluation_functional,
    integrate,
    integrate_solution,
    kernel_check,
    verify_identity,
)

RANDOM_MAPS = [
    ConformalMap(z1=[3, 1], r=1, u=["1/5"]),
    ConformalMap(z1=[4, -1], r="6/5", u=[[0, "1/6"], "1/20"]),
    ConformalMap(z1=["5/2", "3/2"], r="4/5", u=["-1/10", [0, "1/25"], "1/40"]),
]


def test_constant_solution_integrates_to_minus_area(axis_one_raw, unit_disk_at_two):
    integral = integrate_solution(unit_disk_at_two, axis_one_raw, POLY2.one)
    assert integral.value == pytest.approx(-math.pi, rel=1e-12)
    assert integral.magnitude == pytest.approx(math.pi, rel=1e-12)


def test_quadratic_solution_matches_functional(axis_one_raw, unit_disk_at_two):
    integral = integrate_solution(unit_disk_at_two, axis_one_raw, (Z - 2) ** 2)
    assert integral.value == pytest.approx(math.pi / 2, rel=1e-10)


def test_holomorphic_mean_value(cardioid_like):
    integral = integrate(Z - cardioid_like.z1, cardioid_like)
    assert abs(integral.value - math.pi / 5) < 1e-10
    assert integral.nodes >= 32


def test_refinement_cap_raises(unit_disk_at_two):
    with pytest.raises(NoConvergence):
        integrate(Z, unit_disk_at_two, start=16, max_nodes=16)


def test_evaluation_functional_is_exact():
    value = evaluation_functional(
        Z**2, gaussrat(2), gaussrat(1), [gaussrat(1)], [gaussrat(0)]
    )
    assert value == gaussrat(8)


def test_disk_identity(axis_one, unit_disk_at_two):
    solution = fluxes_for_map(axis_one, unit_disk_at_two)
    report = verify_identity(unit_disk_at_two, axis_one, solution)
    assert report.passed, report.to_config()
    assert len(report.checks) == 10
    assert report.max_rel_error <= 1e-9


@pytest.mark.parametrize("conformal_map", RANDOM_MAPS[:1])
@pytest.mark.parametrize("medium", ["axis:1", "axis:2", "dihedral:1,1,0"])
def test_identity_on_nontrivial_maps(medium, conformal_map):
    bundle = build_bundle(medium)
    solution = fluxes_for_map(bundle, conformal_map)
    assert verify_identity(conformal_map, bundle, solution).passed
    assert kernel_check(conformal_map, bundle, solution).passed


@pytest.mark.slow
@pytest.mark.parametrize("conformal_map", RANDOM_MAPS)
@pytest.mark.parametrize(
    "medium", ["axis:1", "axis:2", "axis:3", "dihedral:1,1,0", "dihedral:1,2,1"]
)
def test_identity_sweep(medium, conformal_map):
    bundle = build_bundle(medium)
    solution = fluxes_for_map(bundle, conformal_map)
    assert solution.consistent
    report = verify_identity(conformal_map, bundle, solution)
    assert report.max_rel_error <= 1e-9


@pytest.mark.slow
def test_deformed_identity():
    bundle = build_bundle("deformed:1,4:1,0")
    conformal_map = ConformalMap(z1=[3, 1], r="1/2", u=["1/40"])
    solution = fluxes_for_map(bundle, conformal_map)
    report = verify_identity(conformal_map, bundle, solution, tolerance=1e-8)
    assert report.passed, report.to_config()


def test_wrong_fluxes_fail_the_identity(axis_one, unit_disk_at_two):
    solution = fluxes_for_map(axis_one, unit_disk_at_two)
    tampered = solution.model_copy(update={"Qj": [gaussrat("1/4")]})
    report = verify_identity(unit_disk_at_two, axis_one, tampered)
    assert not report.passed
    assert report.to_config()["passed"] is False


@pytest.mark.slow
@pytest.mark.parametrize(
    "medium", ["axis:1", "axis:2", "axis:3", "dihedral:1,1,0", "dihedral:1,2,1"]
)
def test_identity_holds_on_random_univalent_maps(medium, random_maps):
    bundle = build_bundle(medium)
    for conformal_map in random_maps(20, seed=7):
        solution = fluxes_for_map(bundle, conformal_map)
        assert solution.consistent, conformal_map.to_config()
        report = verify_identity(conformal_map, bundle, solution)
        assert report.passed, conformal_map.to_config()
        assert report.max_rel_error <= 1e-9
