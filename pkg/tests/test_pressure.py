import numpy as np
import pytest

from qdomains.algebra import rational
from qdomains.verify import (
    PressureExpr,
    far_field_check,
    pde_residual,
    pressure_disk,
    source_strengths,
    verify_pressure,
)


@pytest.mark.parametrize(
    "r, rdot, z1",
    [(1, 1, 2), ("1/2", 3, [3, 1]), (2, "-1/4", "5/2"), (1, 1, -2)],
)
def test_pde_residual_is_zero(r, rdot, z1):
    assert not pde_residual(pressure_disk(r, rdot, z1))


def test_disk_pressure_passes_all_checks():
    report = verify_pressure(pressure_disk(1, 1, 2))
    assert report.pde_residual_zero
    assert report.boundary_spread <= 1e-10
    assert report.kinematic_error <= 1e-8
    assert report.expected_monopole == pytest.approx(2)
    assert report.expected_dipole == pytest.approx(-0.5)
    assert report.sources_ok
    assert report.passed
    assert report.to_config()["passed"] is True


def test_boundary_value_for_unit_radius():
    expr = pressure_disk(1, 1, 2)
    theta = np.linspace(0, 2 * np.pi, 7)
    np.testing.assert_allclose(expr.local(np.cos(theta), np.sin(theta)), 0.5, atol=1e-12)
    assert expr.scale == rational("-1/2")


def test_source_strengths_shrink_consistently():
    fits = source_strengths(pressure_disk("1/2", 2, 3))
    for _, q, qx in fits:
        assert q == pytest.approx(2 * 0.5 * 2, rel=1e-6)
        assert qx == pytest.approx(-2 * 0.25 / 6, rel=1e-6)


def test_literal_prefactor_breaks_kinematics():
    expr = pressure_disk(1, 1, 2, source_normalized=False)
    report = verify_pressure(expr, rdot=1)
    assert report.pde_residual_zero
    assert report.boundary_constant
    assert not report.kinematic_ok
    assert not report.passed


@pytest.mark.parametrize("r, z1", [(1, 0), (0, 2), ("-1", 2), (1, [0, 3])])
def test_invalid_disks(r, z1):
    with pytest.raises(ValueError):
        pressure_disk(r, 1, z1)


def test_expression_config_reparses():
    expr = pressure_disk("3/2", 1, [2, "1/2"])
    again = PressureExpr.model_validate(expr.to_config())
    x, y = np.array([2.5, 3.1]), np.array([1.0, -0.2])
    np.testing.assert_allclose(again(x, y), expr(x, y), rtol=1e-14)
    assert set(expr.split()) == {"regular", "log", "lam"}


def test_far_field_matches_homogeneous_growth():
    report = far_field_check()
    assert report.passed
    assert report.x1 == 1000


@pytest.mark.parametrize("r, rdot, z1", [(1, 1, 2), ("1/2", 3, 4), (2, "-1/4", "5/2"), (1, 2, -3)])
def test_fitted_dipole_has_the_expected_sign(r, rdot, z1):
    report = verify_pressure(pressure_disk(r, rdot, z1))
    assert report.sources_ok
    for fit in report.sources:
        assert np.sign(fit.dipole) == np.sign(report.expected_dipole)
        assert np.sign(fit.monopole) == np.sign(report.expected_monopole)
