"""Intertwining operators for the axis, dihedral and deformed media.

Every builder returns an :class:`IntertwinerBundle` holding T, ζ and the
cleared operator ``L_cleared = ζΔ − 2∇ζ·∇``. The identity they satisfy is
``ζ·(T∘Δ) = L_cleared∘T``.

The dihedral and deformed operators come from a Wronskian in the angle θ,
expanded along the row of the unknown function::

    W[f_1, .., f_n, f] = Σ_j C_j ∂θ^j f

Each cofactor ``C_j`` lives in the trigonometric ring, is divided exactly by
the family's denominator and is turned back into a polynomial in (z, z̄).
"""

from __future__ import annotations

import logging
from functools import lru_cache

from sympy.polys.domains import QQ_I

from .._types import OperatorLike, PolyLike
from ..algebra.diffop import DiffOp2, cleared_conjugated_laplacian, compose
from ..algebra.field import as_gaussrat
from ..algebra.laurent import TrigElem, derivative_table, determinant, wronskian_theta
from ..algebra.poly2 import POLY2, X, Z, ZB, Poly2, normalize_leading, proportional
from ..base import BaseSchema
from ..errors import NotDivisible, NotPolynomial
from .media import (
    AxisMedium,
    DeformedMedium,
    DihedralMedium,
    Medium,
    MediumSpec,
    parse_medium,
)

logger = logging.getLogger(__name__)


class IntertwinerBundle(BaseSchema):
    """An intertwining operator together with its medium.

    Parameters
    ----------
    medium : Medium
        The medium the operator was built for.
    T : DiffOp2
        Intertwiner carrying harmonic functions to solutions of
        ``∇ζ⁻²∇φ = 0``.
    zeta : Poly2
        Invariant polynomial; the permeability is ``1/ζ²``.
    L_cleared : DiffOp2
        ``ζΔ − 2∇ζ·∇``.
    normalized : bool
        Whether T and ζ were rescaled to unit leading coefficients.
    """

    _emit_type = False

    medium: MediumSpec
    T: OperatorLike
    zeta: PolyLike
    L_cleared: OperatorLike
    normalized: bool = True

    @property
    def order(self) -> int:
        return self.T.order


def root_orbits(medium: Medium) -> list[tuple[Poly2, int]]:
    """Mirror orbits as ``(F, multiplicity)`` with ``ζ ∝ Π F**multiplicity``.

    Each ``F`` is the product of the linear forms of one orbit of mirror lines.

    Raises
    ------
    ValueError
        For deformed media, whose mirror data is not a root system.
    """
    if isinstance(medium, AxisMedium):
        return [(Z + ZB, medium.n)]
    if isinstance(medium, DihedralMedium):
        s = medium.s
        return [(Z**s + ZB**s, medium.n), (Z**s - ZB**s, medium.l)]
    raise ValueError(f"Medium {medium.key()} has no root-system orbit data.")


def _finish(medium: Medium, T: DiffOp2, zeta: Poly2, normalize: bool) -> IntertwinerBundle:
    if normalize:
        T = T.normalized()
        zeta = normalize_leading(zeta)
    return IntertwinerBundle(
        medium=medium,
        T=T,
        zeta=zeta,
        L_cleared=cleared_conjugated_laplacian(zeta),
        normalized=normalize,
    )


def build_axis(n: int, normalize: bool = True) -> IntertwinerBundle:
    """``T_n = Π_{k=1..n} (x∂x − (2k−1))`` and ``ζ = x^n``.

    Without normalization ``T_1 = x∂x − 1`` and
    ``T_2 = x²∂x² − 3x∂x + 3``; normalization multiplies both by ``2^n``.
    """
    medium = AxisMedium(n)
    T = DiffOp2.identity()
    euler = DiffOp2.euler_x()
    for k in range(1, n + 1):
        T = compose(T, euler - DiffOp2.identity() * QQ_I(2 * k - 1, 0))
    zeta = X**n
    return _finish(medium, T, zeta, normalize)


def _wronskian_operator(
    sines: list[TrigElem], denominator: TrigElem, rho_power: int
) -> tuple[DiffOp2, Poly2]:
    """Expand ``ρ^k W[sines, f] / denominator`` into ``(T, ζ)``.

    ζ is the cofactor of the highest derivative, ``ρ^k W[sines] / denominator``.
    """
    n = len(sines)
    table = derivative_table(sines, n + 1, TrigElem.d_theta)
    rho = TrigElem.rho(rho_power)
    d_theta = DiffOp2.d_theta()
    T = DiffOp2()
    zeta = POLY2.zero
    for j in range(n + 1):
        minor = [row[:j] + row[j + 1 :] for row in table]
        cofactor = determinant(minor, TrigElem()) if n else TrigElem.constant(QQ_I.one)
        if (n + j) % 2:
            cofactor = -cofactor
        if not cofactor:
            continue
        coefficient = (cofactor.exact_divide(denominator) * rho).to_poly2()
        T = T + compose(DiffOp2.multiplication(coefficient), d_theta**j)
        if j == n:
            zeta = coefficient
    return T, zeta


def build_dihedral(s: int, n: int, l: int, normalize: bool = True) -> IntertwinerBundle:  # noqa: E741
    """Wronskian intertwiner of the dihedral medium ``(s, n, l)``.

    ``T[f] = ρ^{s(n+l)} W[sin θ_1, .., sin θ_n, f] /
    (cos(sθ)^{n(n−1)/2} sin(sθ)^{l(l−1)/2})`` with
    ``θ_k = m_k (sθ + π/2)``.

    Raises
    ------
    NotDivisible
        If a cofactor is not divisible by the denominator; valid dihedral data
        never triggers this.
    """
    medium = DihedralMedium(s, n, l)
    sines = [TrigElem.sin(m * s, m) for m in medium.angular_multipliers()]
    denominator = TrigElem.cos(s) ** (n * (n - 1) // 2) * TrigElem.sin(s) ** (
        l * (l - 1) // 2
    )
    T, zeta = _wronskian_operator(sines, denominator, medium.zeta_degree)
    logger.debug("Built dihedral intertwiner %s of order %d", medium.key(), T.order)
    return _finish(medium, T, zeta, normalize)


def deformed_zeta(kseq: list[int], phases: list[int]) -> Poly2:
    """``ρ^{k_n} W[sin θ_1..sin θ_n] / W[sin θ_1..sin θ_{n−1}]`` as a polynomial.

    Raises
    ------
    NotPolynomial
        If the ratio is not exact or is not a polynomial in (z, z̄).
    """
    sines = [TrigElem.sin(k, p) for k, p in zip(kseq, phases)]
    top = wronskian_theta(sines)
    below = wronskian_theta(sines[:-1])
    if not top or not below:
        raise NotPolynomial(f"Sines {kseq}/{phases} are linearly dependent.")
    try:
        ratio = top.exact_divide(below)
    except NotDivisible as err:
        raise NotPolynomial(f"Wronskian ratio for {kseq}/{phases} is not exact.") from err
    return (ratio * TrigElem.rho(kseq[-1])).to_poly2()


def build_deformed(
    kseq: list[int], phases: list[int], normalize: bool = True
) -> IntertwinerBundle:
    """Wronskian-ratio intertwiner ``ρ^{k_n} W[.., f] / W[sin θ_1..sin θ_{n−1}]``.

    Raises
    ------
    NotPolynomial
        If ζ or any coefficient of T fails to be a polynomial.
    """
    medium = DeformedMedium(kseq=list(kseq), phases=list(phases))
    sines = [TrigElem.sin(k, p) for k, p in zip(medium.kseq, medium.phases)]
    below = wronskian_theta(sines[:-1])
    if not below or not wronskian_theta(sines):
        raise NotPolynomial(f"Sines of {medium.key()} are linearly dependent.")
    try:
        T, zeta = _wronskian_operator(sines, below, medium.kseq[-1])
    except NotDivisible as err:
        raise NotPolynomial(f"{medium.key()} does not give a polynomial operator.") from err
    return _finish(medium, T, zeta, normalize)


def build_bundle(medium: Medium | str, normalize: bool = True) -> IntertwinerBundle:
    """Dispatch on the medium family; results are cached per medium."""
    if isinstance(medium, str):
        medium = parse_medium(medium)
    return _build_cached(medium.key(), normalize)


@lru_cache(maxsize=64)
def _build_cached(key: str, normalize: bool) -> IntertwinerBundle:
    medium = parse_medium(key)
    if isinstance(medium, AxisMedium):
        return build_axis(medium.n, normalize)
    if isinstance(medium, DihedralMedium):
        return build_dihedral(medium.s, medium.n, medium.l, normalize)
    return build_deformed(medium.kseq, medium.phases, normalize)


def combine_bundles(
    bundles: list[IntertwinerBundle], weights: list | None = None
) -> IntertwinerBundle:
    """Linear combination ``Σ w_i T_i`` of intertwiners sharing one ζ.

    Raises
    ------
    ValueError
        If the bundles have non-proportional ζ or mismatched weights.
    """
    if not bundles:
        raise ValueError("Need at least one bundle to combine.")
    weights = [1] * len(bundles) if weights is None else list(weights)
    if len(weights) != len(bundles):
        raise ValueError(f"Got {len(weights)} weights for {len(bundles)} bundles.")
    zeta = bundles[0].zeta
    T = DiffOp2()
    for bundle, weight in zip(bundles, weights):
        if not proportional(bundle.zeta, zeta):
            raise ValueError(
                f"Cannot combine {bundle.medium.key()} with {bundles[0].medium.key()}: "
                "their invariant polynomials differ."
            )
        T = T + bundle.T * as_gaussrat(weight)
    if not T:
        raise ValueError("The weighted combination of intertwiners vanishes.")
    return IntertwinerBundle(
        medium=bundles[0].medium,
        T=T,
        zeta=zeta,
        L_cleared=cleared_conjugated_laplacian(zeta),
        normalized=False,
    )


__all__ = [
    "IntertwinerBundle",
    "build_axis",
    "build_bundle",
    "build_deformed",
    "build_dihedral",
    "combine_bundles",
    "deformed_zeta",
    "root_orbits",
]
