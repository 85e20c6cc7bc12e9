import pytest
from sympy.polys.domains import QQ_I

from qdomains.algebra import POLY2, X, Y, Z, DiffOp2, apply_to_analytic, proportional
from qdomains.algebra.field import I
from qdomains.errors import NotPolynomial
from qdomains.intertwine import (
    DeformedMedium,
    build_axis,
    build_bundle,
    build_deformed,
    build_dihedral,
    check_intertwining,
    check_schrodinger_gauge,
    combine_bundles,
    deformed_zeta,
    gauge_potential,
    root_orbits,
)

AXIS_MEDIA = [f"axis:{n}" for n in range(5)]
DIHEDRAL_MEDIA = [
    "dihedral:1,1,0",
    "dihedral:1,2,0",
    "dihedral:2,1,0",
    "dihedral:1,2,1",
    pytest.param("dihedral:2,2,1", marks=pytest.mark.slow),
]


def test_axis_one_is_euler_minus_one(axis_one_raw):
    assert axis_one_raw.T == DiffOp2.euler_x() - DiffOp2.identity()
    assert axis_one_raw.zeta == X


def test_axis_two_coefficients():
    bundle = build_axis(2, normalize=False)
    assert apply_to_analytic(bundle.T) == [POLY2(QQ_I(3, 0)), -(X * 3), X**2]


def test_normalization_rescales_by_power_of_two():
    raw, normalized = build_axis(3, normalize=False), build_axis(3)
    assert normalized.T == raw.T * QQ_I(8, 0)
    assert proportional(normalized.zeta, X**3)
    assert normalized.normalized and not raw.normalized


def test_dihedral_one_one_zero_acts_like_x_z_derivative():
    bundle = build_dihedral(1, 1, 0)
    f = Z**3
    expected = X * Z * Z**2 * QQ_I(3, 0) - Y * f * I
    assert proportional(bundle.T.apply(f), expected)
    assert proportional(bundle.zeta, X)


def test_dihedral_one_two_zero_has_x_squared():
    assert proportional(build_dihedral(1, 2, 0).zeta, X**2)


def test_dihedral_zeta_matches_root_orbits():
    bundle = build_dihedral(1, 2, 1)
    product = POLY2.one
    for orbit, mult in root_orbits(bundle.medium):
        product *= orbit**mult
    assert proportional(bundle.zeta, product)
    assert proportional(bundle.zeta, X**2 * Y)


@pytest.mark.parametrize("medium", AXIS_MEDIA + DIHEDRAL_MEDIA)
def test_intertwining_identity_holds_exactly(medium):
    report = check_intertwining(build_bundle(medium), degree=8)
    assert report.passed, report.to_config()
    assert report.operator_identity is True
    assert report.checked == 45


@pytest.mark.parametrize("medium", AXIS_MEDIA + DIHEDRAL_MEDIA)
def test_schrodinger_gauge_holds_exactly(medium):
    report = check_schrodinger_gauge(build_bundle(medium), degree=8)
    assert report.passed, report.to_config()


def test_axis_gauge_potential():
    """Double mirror: ``ζ²V = x⁴ · 6/x²``."""
    bundle = build_axis(2, normalize=False)
    assert gauge_potential(bundle) == X**2 * 6


def test_wrong_zeta_leaves_residuals(axis_one):
    tampered = axis_one.model_copy(update={"zeta": X**2})
    tampered = tampered.model_copy(
        update={"L_cleared": build_bundle("axis:2").L_cleared}
    )
    report = check_intertwining(tampered, degree=3)
    assert not report.passed
    assert report.residuals
    assert report.to_config()["passed"] is False


def test_deformed_zeta_of_the_second_medium():
    zeta = deformed_zeta([1, 4], [1, 0])
    assert zeta == X**2 * (X**2 - Y**2 * 5) * 4


def test_deformed_bundle_intertwines():
    bundle = build_deformed([1, 4], [1, 0])
    assert bundle.medium == DeformedMedium(kseq=[1, 4], phases=[1, 0])
    assert check_intertwining(bundle, degree=6).passed
    with pytest.raises(ValueError):
        root_orbits(bundle.medium)


def test_dihedral_data_as_deformed_gives_same_zeta():
    bundle = build_dihedral(1, 2, 1)
    deformed = build_bundle(bundle.medium.as_deformed())
    assert proportional(bundle.zeta, deformed.zeta)


def test_non_polynomial_operator_is_rejected():
    # W[sin 2θ, cos 3θ] has cofactors that sin 2θ does not divide
    with pytest.raises(NotPolynomial):
        build_deformed([2, 3], [0, 1])


def test_linearly_dependent_sines_are_rejected():
    with pytest.raises(NotPolynomial):
        deformed_zeta([0, 1], [0, 2])


def test_combine_bundles(axis_one):
    combined = combine_bundles([axis_one, axis_one], [1, 2])
    assert combined.T == axis_one.T * QQ_I(3, 0)
    assert not combined.normalized
    with pytest.raises(ValueError):
        combine_bundles([axis_one, build_bundle("axis:2")])
    with pytest.raises(ValueError):
        combine_bundles([axis_one, axis_one], [1, -1])
    with pytest.raises(ValueError):
        combine_bundles([])
