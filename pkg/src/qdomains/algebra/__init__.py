"""Exact arithmetic: Gaussian rationals, (z, z̄) polynomials, Laurent and
trigonometric rings, and normal-ordered differential operators."""

from .diffop import (
    DiffOp2,
    apply_to_analytic,
    cleared_conjugated_laplacian,
    compose,
    gradient_dot,
)
from .field import (
    ONE,
    ZERO,
    GaussRat,
    I,
    Rat,
    as_gaussrat,
    conj,
    gaussrat,
    rational,
    rationalize,
    to_complex,
)
from .laurent import (
    LaurentPoly,
    TrigElem,
    determinant,
    exact_divide,
    residue,
    substitute,
    wronskian_theta,
)
from .poly2 import (
    POLY2,
    RHO2,
    X,
    Y,
    Z,
    ZB,
    Poly2,
    antiderivative_zbar,
    conjugate,
    d_z,
    d_zb,
    evaluate,
    lambdify,
    monomial,
    normalize_leading,
    poly2,
    proportional,
    shift,
    total_degree,
)

__all__ = [
    "DiffOp2",
    "GaussRat",
    "I",
    "LaurentPoly",
    "ONE",
    "POLY2",
    "Poly2",
    "RHO2",
    "Rat",
    "TrigElem",
    "X",
    "Y",
    "Z",
    "ZB",
    "ZERO",
    "antiderivative_zbar",
    "apply_to_analytic",
    "as_gaussrat",
    "cleared_conjugated_laplacian",
    "compose",
    "conj",
    "conjugate",
    "d_z",
    "d_zb",
    "determinant",
    "evaluate",
    "exact_divide",
    "gaussrat",
    "gradient_dot",
    "lambdify",
    "monomial",
    "normalize_leading",
    "poly2",
    "proportional",
    "rational",
    "rationalize",
    "residue",
    "shift",
    "substitute",
    "to_complex",
    "total_degree",
    "wronskian_theta",
]
