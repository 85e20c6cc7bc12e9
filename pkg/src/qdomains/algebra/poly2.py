"""Bivariate polynomials in (z, z̄) over the Gaussian rationals.

A ``Poly2`` is an element of the sympy sparse ring ``QQ_I[z, zb]`` with
graded-lexicographic order, so ``p.LC`` is the coefficient of the highest
total degree term with the largest z-power. The Cartesian coordinates are
derived views: ``X = (z+z̄)/2`` and ``Y = (z−z̄)/(2i)`` are ring elements, and
every conversion between the two pictures is an exact ring map.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping

import numpy as np
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from .field import ONE, GaussRat, I, conj, to_complex

POLY2, Z, ZB = ring("z,zb", QQ_I, grlex)

Poly2 = PolyElement
"""Element of ``POLY2``; keys are ``(a, b)`` for ``z**a * zb**b``."""

_HALF = QQ_I(QQ(1, 2), 0)

X = (Z + ZB) * _HALF
Y = (Z - ZB) * (-I * _HALF)
RHO2 = Z * ZB


def poly2(terms: Mapping[tuple[int, int], GaussRat]) -> Poly2:
    """Build a Poly2 from ``{(a, b): coefficient}``; zero coefficients vanish."""
    return POLY2.from_dict({k: c for k, c in terms.items() if c})


def monomial(a: int, b: int, coeff: GaussRat = ONE) -> Poly2:
    return POLY2.from_dict({(a, b): coeff}) if coeff else POLY2.zero


def constant(coeff: GaussRat) -> Poly2:
    return monomial(0, 0, coeff)


def sorted_terms(p: Poly2) -> list[tuple[tuple[int, int], GaussRat]]:
    """Terms in canonical graded-lexicographic descending order."""
    return sorted(p.items(), key=lambda item: (sum(item[0]), item[0][0]), reverse=True)


def total_degree(p: Poly2) -> int:
    """Largest ``a+b`` among the terms, ``-1`` for the zero polynomial."""
    return max((a + b for a, b in p.keys()), default=-1)


def is_homogeneous(p: Poly2) -> bool:
    return len({a + b for a, b in p.keys()}) <= 1


def conjugate(p: Poly2) -> Poly2:
    """Complex conjugate as a function: swap z and z̄, conjugate coefficients."""
    return POLY2.from_dict({(b, a): conj(c) for (a, b), c in p.items()})


def d_z(p: Poly2, k: int = 1) -> Poly2:
    for _ in range(k):
        p = p.diff(Z)
    return p


def d_zb(p: Poly2, k: int = 1) -> Poly2:
    for _ in range(k):
        p = p.diff(ZB)
    return p


def antiderivative_zbar(p: Poly2) -> Poly2:
    """The primitive ``P`` with ``∂P/∂z̄ = p`` and no z̄-free constant added."""
    return POLY2.from_dict(
        {(a, b + 1): c * QQ_I(QQ(1, b + 1), 0) for (a, b), c in p.items()}
    )


def evaluate(p: Poly2, z1: GaussRat) -> GaussRat:
    """Exact value at the point ``z = z1``, ``z̄ = conj(z1)``."""
    if not p:
        return QQ_I.zero
    return POLY2.domain.convert(p(z1, conj(z1)))


def shift(p: Poly2, z1: GaussRat) -> Poly2:
    """Re-expand ``p`` in the local variables ``z − z1`` and ``z̄ − conj(z1)``."""
    if not z1:
        return p
    return p.compose([(Z, Z + z1), (ZB, ZB + conj(z1))])


def normalize_leading(p: Poly2) -> Poly2:
    """Scale ``p`` so its graded-lexicographic leading coefficient is one."""
    if not p:
        raise ValueError("Cannot normalize the zero polynomial.")
    return p * (ONE / p.LC)


def proportional(p: Poly2, q: Poly2) -> bool:
    """Whether ``p = c·q`` for a nonzero constant ``c``."""
    if not p or not q:
        return not p and not q
    return normalize_leading(p) == normalize_leading(q)


def lambdify(p: Poly2) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Numeric evaluator ``f(z, zb)`` over numpy arrays.

    Terms are summed in canonical order so repeated evaluations are bitwise
    reproducible.
    """
    terms = [(a, b, to_complex(c)) for (a, b), c in sorted_terms(p)]
    amax = max((a for a, _, _ in terms), default=0)
    bmax = max((b for _, b, _ in terms), default=0)

    def evaluate_numeric(z, zb):
        z = np.asarray(z, dtype=complex)
        zb = np.asarray(zb, dtype=complex)
        zp = [np.ones_like(z)]
        for _ in range(amax):
            zp.append(zp[-1] * z)
        zbp = [np.ones_like(zb)]
        for _ in range(bmax):
            zbp.append(zbp[-1] * zb)
        total = np.zeros(np.broadcast(z, zb).shape, dtype=complex)
        for a, b, c in terms:
            total = total + c * zp[a] * zbp[b]
        return total

    return evaluate_numeric
