"""Exact arithmetic: field coercions, (z, z̄) polynomials, Laurent and
trigonometric rings, normal-ordered operators."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy.polys.domains import QQ_I

from qdomains.algebra import (
    POLY2,
    X,
    Y,
    Z,
    ZB,
    DiffOp2,
    LaurentPoly,
    TrigElem,
    antiderivative_zbar,
    apply_to_analytic,
    as_gaussrat,
    compose,
    conj,
    conjugate,
    d_z,
    d_zb,
    evaluate,
    exact_divide,
    gaussrat,
    monomial,
    normalize_leading,
    proportional,
    rational,
    residue,
    shift,
    substitute,
    total_degree,
    wronskian_theta,
)
from qdomains.algebra.field import i_power, inverse_factorial
from qdomains.errors import NotDivisible, NotPolynomial

small = st.integers(min_value=-6, max_value=6)
gaussian = st.builds(lambda a, b, c: gaussrat(Fraction(a, c), b), small, small, st.integers(1, 5))


@st.composite
def polys(draw, max_degree=3):
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)),
            gaussian,
            max_size=5,
        )
    )
    return POLY2.from_dict({k: c for k, c in terms.items() if c})


@st.composite
def trig_elems(draw):
    terms = draw(st.dictionaries(st.integers(-3, 3), gaussian, min_size=1, max_size=4))
    terms = {k: c for k, c in terms.items() if c}
    assume(terms)
    return TrigElem(LaurentPoly.from_terms(terms), draw(st.integers(0, 2)))


@st.composite
def operators(draw):
    terms = draw(
        st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), polys(2), max_size=3)
    )
    return DiffOp2({k: p for k, p in terms.items() if p})


# Field ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "value, expected",
    [
        ("3/4", (3, 4)),
        (3, (3, 1)),
        (0.75, (3, 4)),
        (Fraction(-5, 6), (-5, 6)),
        ("0.125", (1, 8)),
    ],
)
def test_rational_accepts_documented_forms(value, expected):
    r = rational(value)
    assert (int(r.numerator), int(r.denominator)) == expected


@pytest.mark.parametrize("value", [True, "one half", float("nan"), None])
def test_rational_rejects_garbage(value):
    with pytest.raises(ValueError):
        rational(value)


def test_as_gaussrat_pairs_and_complex():
    assert as_gaussrat(["1/2", -3]) == QQ_I(rational("1/2"), -3)
    assert as_gaussrat(0.5 + 2j) == QQ_I(rational("1/2"), 2)
    with pytest.raises(ValueError):
        as_gaussrat([1, 2, 3])


def test_i_power_cycles():
    assert [i_power(k) for k in range(-1, 4)] == [
        QQ_I(0, -1),
        QQ_I(1, 0),
        QQ_I(0, 1),
        QQ_I(-1, 0),
        QQ_I(0, -1),
    ]
    assert inverse_factorial(4) == QQ_I(rational("1/24"), 0)


# Poly2 ------------------------------------------------------------------------


def test_real_coordinates_are_ring_elements():
    assert X * 2 == Z + ZB
    assert X**2 + Y**2 == Z * ZB
    assert conjugate(Y) == Y


@given(polys(), polys())
@settings(deadline=None, max_examples=40)
def test_wirtinger_derivatives_obey_leibniz(p, q):
    assert d_z(p * q) == d_z(p) * q + p * d_z(q)
    assert d_zb(conjugate(p)) == conjugate(d_z(p))


@given(polys(), gaussian)
@settings(deadline=None, max_examples=40)
def test_shift_moves_evaluation_point(p, z1):
    assert evaluate(shift(p, z1), QQ_I.zero) == evaluate(p, z1)


@pytest.mark.parametrize("j", [0, 1, 2, 5])
def test_zbar_primitive_of_x_powers(j):
    """``∫ xʲ dz̄ = (z + z̄)ʲ⁺¹ / (2ʲ(j+1))`` up to its z̄-free part."""
    scale = gaussrat(Fraction(1, 2**j * (j + 1)))
    expected = ((Z + ZB) ** (j + 1) - Z ** (j + 1)) * scale
    assert antiderivative_zbar(X**j) == expected


def test_zbar_primitive_examples():
    assert antiderivative_zbar(POLY2.one) == ZB
    assert antiderivative_zbar(Z * ZB) == Z * ZB**2 * gaussrat("1/2")
    assert antiderivative_zbar(POLY2.zero) == POLY2.zero


@given(polys(10))
@settings(deadline=None, max_examples=40)
def test_zbar_primitive_inverts_d_zb(p):
    assert d_zb(antiderivative_zbar(p)) == p


@given(polys(3), polys(3))
@settings(deadline=None, max_examples=30)
def test_poly_exact_division_recovers_factor(p, q):
    assume(q)
    assert exact_divide(p * q, q) == p


def test_poly_exact_division_rejects_non_factor():
    with pytest.raises(NotDivisible):
        exact_divide(Z + 1, Z - 1)
    with pytest.raises(ZeroDivisionError):
        exact_divide(Z, POLY2.zero)


def test_normalize_and_proportional():
    p = (X**2 - Y**2 * 5) * X**2
    assert proportional(p * QQ_I(-7, 0), p)
    assert normalize_leading(p * QQ_I(0, 3)).LC == QQ_I.one
    assert not proportional(p, X**4)
    assert total_degree(p) == 4


# Laurent ring -----------------------------------------------------------------


def test_disk_area_residue():
    """``res[(x1 + r/w)·r] = r²``, the area residue of the disk."""
    r, x1 = gaussrat("3/2"), gaussrat(2)
    z = LaurentPoly.from_terms({0: x1, 1: r})
    zbar = z.conjugate_reciprocal()
    assert zbar == LaurentPoly.from_terms({0: x1, -1: r})
    integrand = substitute(ZB, z, zbar)
    assert residue(integrand * LaurentPoly.constant(r)) == r * r
    assert residue(integrand * integrand) == x1 * r * 2


def test_laurent_exact_division():
    a = LaurentPoly.from_terms({-2: QQ_I(1, 0), 1: QQ_I(3, 1)})
    b = LaurentPoly.from_terms({0: QQ_I(2, 0), 3: QQ_I(0, 1)})
    assert (a * b).exact_divide(b) == a
    with pytest.raises(NotDivisible):
        a.exact_divide(LaurentPoly.from_terms({0: QQ_I.one, 1: QQ_I.one}) * b)


def test_laurent_division_by_coprime_factor_fails():
    """``(u + 1)/(u − 1)`` is not a Laurent polynomial."""
    plus = LaurentPoly.from_terms({0: QQ_I.one, 1: QQ_I.one})
    minus = LaurentPoly.from_terms({0: -QQ_I.one, 1: QQ_I.one})
    with pytest.raises(NotDivisible):
        exact_divide(plus, minus)
    with pytest.raises(NotDivisible):
        exact_divide(TrigElem(plus), TrigElem(minus))


def test_conjugate_reciprocal_matches_on_circle():
    z = LaurentPoly.from_terms({0: QQ_I(2, 0), 1: QQ_I.one, 2: QQ_I(0, 1)})
    assert z.conjugate_reciprocal().terms() == {0: QQ_I(2, 0), -1: QQ_I.one, -2: QQ_I(0, -1)}


# Trigonometric ring -------------------------------------------------------------


def test_wronskian_of_first_two_sines():
    """``W[sin θ, sin 2θ] = −2 sin³θ``."""
    s = TrigElem.sin(1)
    cube = s * s * s
    assert wronskian_theta([s, TrigElem.sin(2)]) == -(cube + cube)


def test_trig_to_poly2():
    assert (TrigElem.cos(1) * TrigElem.rho(1)).to_poly2() == X
    assert (TrigElem.sin(1) * TrigElem.rho(1)).to_poly2() == Y
    with pytest.raises(NotPolynomial):
        TrigElem.sin(2).to_poly2()


def test_trig_exact_division_of_cos_powers():
    c = TrigElem.cos(1)
    numerator = c**3 * TrigElem.sin(2)
    assert numerator.exact_divide(c**3) == TrigElem.sin(2)
    assert TrigElem.sin(3).is_real()


@given(trig_elems(), trig_elems())
@settings(deadline=None, max_examples=30)
def test_trig_exact_division_recovers_factor(a, b):
    assert exact_divide(a * b, b) == a


harmonic_specs = st.lists(
    st.tuples(st.integers(1, 4), st.integers(0, 3)), min_size=2, max_size=3, unique_by=lambda t: t[0]
)


@given(harmonic_specs)
@settings(deadline=None, max_examples=25)
def test_wronskian_is_alternating(harmonics):
    fs = [TrigElem.sin(k, phase) for k, phase in harmonics]
    swapped = [fs[1], fs[0], *fs[2:]]
    assert wronskian_theta(swapped) == -wronskian_theta(fs)


# Operators --------------------------------------------------------------------


def test_axis_two_factor_chain_expands():
    """``(x∂x − 1)(x∂x − 3) = x²∂x² − 3x∂x + 3`` on analytic functions."""
    euler = DiffOp2.euler_x()
    one = DiffOp2.identity()
    T = compose(euler - one, euler - one * QQ_I(3, 0))
    B = apply_to_analytic(T)
    assert B == [POLY2(QQ_I(3, 0)), -(X * 3), X**2]


@given(polys(2), polys(2))
@settings(deadline=None, max_examples=25)
def test_composition_matches_sequential_application(p, q):
    A = DiffOp2({(1, 0): p, (0, 0): q})
    B = DiffOp2({(0, 1): q, (1, 1): p})
    f = monomial(3, 2) + monomial(1, 4, QQ_I(0, 2))
    assert compose(A, B).apply(f) == A.apply(B.apply(f))


@given(operators(), operators(), operators())
@settings(deadline=None, max_examples=15)
def test_composition_is_associative(A, B, C):
    assert compose(compose(A, B), C) == compose(A, compose(B, C))


def test_operator_conjugate_and_normalized():
    op = DiffOp2({(2, 0): X * QQ_I(3, 0), (0, 1): Z})
    f = monomial(2, 3, QQ_I(1, 2))
    assert op.conjugate().apply(f) == conjugate(op.apply(conjugate(f)))
    assert op.normalized().coefficient(2, 0).LC == QQ_I.one
    assert op.order == 2


def test_laplacian_is_four_dz_dzb():
    r4 = (Z * ZB) ** 2
    assert DiffOp2.laplacian().apply(r4) == Z * ZB * 16
    assert DiffOp2.d_x().apply(X) == POLY2.one
    assert DiffOp2.d_y().apply(Y) == POLY2.one
    assert conj(QQ_I(1, 2)) == QQ_I(1, -2)
