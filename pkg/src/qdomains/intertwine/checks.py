"""Exact residual checks for intertwining and gauge identities."""

from __future__ import annotations

import logging

from pydantic import Field

from .._types import PolyLike
from ..algebra.diffop import DiffOp2, compose, cleared_conjugated_laplacian
from ..algebra.poly2 import POLY2, Poly2, d_z, d_zb, monomial
from ..base import BaseSchema
from ..config import parallel_map
from .intertwine import IntertwinerBundle, root_orbits

logger = logging.getLogger(__name__)


class MonomialResidual(BaseSchema):
    """Nonzero residual left by one test monomial ``z^a z̄^b``."""

    _emit_type = False

    monomial: tuple[int, int]
    residual: PolyLike


class ResidualReport(BaseSchema):
    """Outcome of an exact identity check over all monomials up to a degree.

    ``residuals`` lists only the monomials whose residual is not the zero
    polynomial, so an empty list means the identity holds.
    """

    _emit_type = False

    check: str
    medium: str
    degree: int = Field(..., ge=0)
    checked: int = Field(..., ge=0, description="Number of monomials tested.")
    residuals: list[MonomialResidual] = Field(default_factory=list)
    operator_identity: bool | None = Field(
        default=None,
        description="Whether the identity also holds as an operator equation.",
    )

    @property
    def passed(self) -> bool:
        return not self.residuals and self.operator_identity is not False

    def to_config(self) -> dict:
        config = super().to_config()
        config["passed"] = self.passed
        return config


def _monomials(degree: int) -> list[tuple[int, int]]:
    return [(a, total - a) for total in range(degree + 1) for a in range(total, -1, -1)]


def _collect(check, medium, degree, residual_of, operator_identity=None) -> ResidualReport:
    keys = _monomials(degree)
    residuals = [
        MonomialResidual(monomial=key, residual=value)
        for key, value in zip(keys, parallel_map(residual_of, keys))
        if value
    ]
    report = ResidualReport(
        check=check,
        medium=medium,
        degree=degree,
        checked=len(keys),
        residuals=residuals,
        operator_identity=operator_identity,
    )
    if report.passed:
        logger.info("%s holds for %s up to degree %d", check, medium, degree)
    else:
        logger.warning(
            "%s fails for %s at %d monomials", check, medium, len(report.residuals)
        )
    return report


def check_intertwining(bundle: IntertwinerBundle, degree: int = 8) -> ResidualReport:
    """Check ``ζ·T[Δm] = L_cleared[T[m]]`` for every monomial of degree ≤ ``degree``.

    The identity is also compared as an exact operator equation
    ``ζ·(T∘Δ) = L_cleared∘T``.
    """
    laplacian = DiffOp2.laplacian()
    T, zeta, L = bundle.T, bundle.zeta, bundle.L_cleared

    def residual_of(key: tuple[int, int]) -> Poly2:
        m = monomial(*key)
        return zeta * T.apply(laplacian.apply(m)) - L.apply(T.apply(m))

    operator_identity = compose(T, laplacian) * zeta == compose(L, T)
    return _collect(
        "intertwining", bundle.medium.key(), degree, residual_of, operator_identity
    )


def gauge_potential(bundle: IntertwinerBundle) -> Poly2:
    """``ζ²·Σ (α·α) m_α(m_α+1)/(α·z)²`` as a polynomial.

    For an orbit product ``F`` the orbit sum of ``(α·α)/(α·z)²`` equals
    ``4 F_z F_z̄ / F²``.
    """
    zeta = bundle.zeta
    total = POLY2.zero
    for orbit, mult in root_orbits(bundle.medium):
        if not mult:
            continue
        cofactor = zeta.exquo(orbit)
        total += cofactor**2 * d_z(orbit) * d_zb(orbit) * (4 * mult * (mult + 1))
    return total


def check_schrodinger_gauge(bundle: IntertwinerBundle, degree: int = 8) -> ResidualReport:
    """Check ``ζ·∇ζ⁻²∇[ζm] = Δm − V·m`` for the Calogero-Moser potential ``V``.

    Both sides are multiplied by ζ², giving
    ``L_cleared[ζm] = ζ²Δm − ζ²V·m``.

    Raises
    ------
    ValueError
        For deformed media, which carry no root-system data.
    """
    zeta = bundle.zeta
    potential = gauge_potential(bundle)
    L = cleared_conjugated_laplacian(zeta)
    laplacian = DiffOp2.laplacian()

    def residual_of(key: tuple[int, int]) -> Poly2:
        m = monomial(*key)
        return L.apply(zeta * m) - (zeta**2 * laplacian.apply(m) - potential * m)

    return _collect("schrodinger-gauge", bundle.medium.key(), degree, residual_of)


__all__ = [
    "MonomialResidual",
    "ResidualReport",
    "check_intertwining",
    "check_schrodinger_gauge",
    "gauge_potential",
]
