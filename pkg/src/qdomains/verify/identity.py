"""Numeric check of the quadrature identity over a polynomial domain.

Integrals over Ω are pulled back to the unit disk,
``∫_Ω g dxdy = ∫_0^1 ∫_0^{2π} g(z(w)) |z′(w)|² ρ dτ dρ`` with ``w = ρe^{iτ}``,
and evaluated with Gauss-Legendre nodes in ρ and the trapezoid rule in τ.
"""

from __future__ import annotations

import logging
import math
from math import factorial

import numpy as np
from pydantic import Field
from scipy import special
from sympy.polys.domains import QQ_I

from ..algebra.field import ZERO, GaussRat, conj, to_complex
from ..algebra.poly2 import POLY2, Poly2, Z, ZB, lambdify, shift
from ..base import BaseSchema
from ..domains.conformal_map import ConformalMap
from ..errors import NoConvergence
from ..fluxes.fluxes import FluxSolution
from ..intertwine.intertwine import IntertwinerBundle

logger = logging.getLogger(__name__)

START_NODES = 16
MAX_NODES = 1024
REFINE_TOLERANCE = 1e-10
IDENTITY_TOLERANCE = 1e-9


class Integral(BaseSchema):
    """Converged value of ``∫_Ω g`` with the scale ``∫_Ω |g|``."""

    _emit_type = False

    value: complex
    magnitude: float = Field(..., description="∫_Ω |g| dxdy at the final resolution.")
    nodes: int = Field(..., description="Radial Gauss-Legendre nodes used.")


def _disk_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Points ``w`` and weights (including the Jacobian ρ) on the unit disk."""
    t, wt = special.roots_legendre(n)
    rho = (t + 1) / 2
    rho_weights = wt / 2 * rho
    m = 2 * n
    tau = 2 * np.pi * np.arange(m) / m
    w = rho[:, None] * np.exp(1j * tau)[None, :]
    weights = np.broadcast_to(rho_weights[:, None] * (2 * np.pi / m), w.shape)
    return w.ravel(), weights.ravel()


def _integrate_once(integrand, conformal_map: ConformalMap, n: int) -> tuple[complex, float]:
    w, weights = _disk_rule(n)
    z = conformal_map(w)
    jac = np.abs(conformal_map.derivative_at(w)) ** 2
    values = integrand(z, np.conj(z)) * jac * weights
    return complex(values.sum()), float(np.abs(values).sum())


def integrate(
    g: Poly2,
    conformal_map: ConformalMap,
    start: int = START_NODES,
    tolerance: float = REFINE_TOLERANCE,
    max_nodes: int = MAX_NODES,
) -> Integral:
    """``∫_Ω g dxdy`` refined by doubling until successive values agree.

    Raises
    ------
    NoConvergence
        If ``max_nodes`` radial nodes are not enough.
    """
    integrand = lambdify(g)
    n = start
    previous, _ = _integrate_once(integrand, conformal_map, n)
    while n < max_nodes:
        n *= 2
        value, magnitude = _integrate_once(integrand, conformal_map, n)
        change = abs(value - previous)
        logger.debug("Quadrature with %d radial nodes: change %.3e", n, change)
        if change <= tolerance * max(abs(value), magnitude):
            return Integral(value=value, magnitude=magnitude, nodes=n)
        previous = value
    raise NoConvergence(f"Area quadrature did not settle with {max_nodes} radial nodes.")


def integrate_solution(
    conformal_map: ConformalMap, bundle: IntertwinerBundle, f: Poly2, **kwargs
) -> Integral:
    """``∫_Ω T[f] dxdy`` for the bundle's intertwiner T."""
    return integrate(bundle.T.apply(f), conformal_map, **kwargs)


def evaluation_functional(
    phi: Poly2, z1: GaussRat, Q: GaussRat, Qj: list[GaussRat], Qj_bar: list[GaussRat]
) -> GaussRat:
    """``Q φ(z1) + Σ_j Q_j ∂z^j φ(z1) + Σ_j Q̄_j ∂z̄^j φ(z1)``, exactly."""
    h = shift(phi, z1)
    total = Q * h.get((0, 0), ZERO)
    for j, (q, qb) in enumerate(zip(Qj, Qj_bar), 1):
        scale = QQ_I(factorial(j), 0)
        total += (q * h.get((j, 0), ZERO) + qb * h.get((0, j), ZERO)) * scale
    return total


class IdentityCheck(BaseSchema):
    """One test solution of the quadrature identity."""

    _emit_type = False

    family: str
    p: int
    integral: complex
    expected: complex
    rel_error: float


class IdentityReport(BaseSchema):
    """Comparison of ``∫_Ω φ`` with ``π·Q̂[φ](z1)`` over a family of solutions."""

    _emit_type = False

    checks: list[IdentityCheck]
    max_rel_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_rel_error <= self.tolerance

    def to_config(self) -> dict:
        config = super().to_config()
        config["passed"] = self.passed
        return config


def _relative(value: complex, expected: complex, magnitude: float) -> float:
    return abs(value - expected) / max(abs(expected), magnitude, np.finfo(float).tiny)


def verify_identity(
    conformal_map: ConformalMap,
    bundle: IntertwinerBundle,
    solution: FluxSolution,
    basis_size: int = 4,
    tolerance: float = IDENTITY_TOLERANCE,
    **kwargs,
) -> IdentityReport:
    """Check ``∫_Ω φ = π Q̂[φ](z1)`` for ``φ = T[(z−z1)^p]`` and
    ``φ = T[(z̄−z̄1)^p]``, ``p = 0..basis_size``.

    The relative error of each check is ``|L − R| / max(|R|, ∫|φ|)``.
    """
    z1 = conformal_map.z1
    checks = []
    for p in range(basis_size + 1):
        for family, base, Q in (
            ("holomorphic", Z - z1, solution.Q),
            ("conjugate", ZB - conj(z1), solution.Q_bar),
        ):
            phi = bundle.T.apply(base**p)
            integral = integrate(phi, conformal_map, **kwargs)
            expected = math.pi * to_complex(
                evaluation_functional(phi, z1, Q, solution.Qj, solution.Qj_bar)
            )
            checks.append(
                IdentityCheck(
                    family=family,
                    p=p,
                    integral=integral.value,
                    expected=expected,
                    rel_error=_relative(integral.value, expected, integral.magnitude),
                )
            )
    worst = max(check.rel_error for check in checks)
    logger.info("Quadrature identity max relative error %.3e", worst)
    return IdentityReport(checks=checks, max_rel_error=worst, tolerance=tolerance)


class KernelReport(BaseSchema):
    """Solutions annihilated by the quadrature functional must integrate to zero."""

    _emit_type = False

    ratios: list[float] = Field(..., description="|∫_Ω φ| / ∫_Ω |φ| per combination.")
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.ratios, default=0.0) <= self.tolerance

    def to_config(self) -> dict:
        config = super().to_config()
        config["passed"] = self.passed
        return config


def kernel_check(
    conformal_map: ConformalMap,
    bundle: IntertwinerBundle,
    solution: FluxSolution,
    basis_size: int = 4,
    combinations: int = 4,
    seed: int = 0,
    tolerance: float = IDENTITY_TOLERANCE,
    **kwargs,
) -> KernelReport:
    """Integrate random exact combinations ``φ`` with ``Q̂[φ](z1) = 0``.

    Each combination draws small integer weights over the holomorphic basis
    ``T[(z−z1)^p]`` and then removes its functional value along the basis
    element with the largest one.
    """
    z1 = conformal_map.z1
    basis = [bundle.T.apply((Z - z1) ** p) for p in range(basis_size + 1)]
    values = [
        evaluation_functional(phi, z1, solution.Q, solution.Qj, solution.Qj_bar)
        for phi in basis
    ]
    pivot = max(range(len(basis)), key=lambda p: abs(to_complex(values[p])))
    if not values[pivot]:
        raise ValueError("The quadrature functional vanishes on the whole basis.")
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(combinations):
        weights = [QQ_I(int(a), int(b)) for a, b in rng.integers(-5, 6, size=(len(basis), 2))]
        phi = sum((w * b for w, b in zip(weights, basis)), POLY2.zero)
        value = sum((w * v for w, v in zip(weights, values)), ZERO)
        phi = phi - basis[pivot] * (value / values[pivot])
        if not phi:
            continue
        integral = integrate(phi, conformal_map, **kwargs)
        ratios.append(abs(integral.value) / max(integral.magnitude, np.finfo(float).tiny))
    logger.info("Kernel check max ratio %.3e", max(ratios, default=0.0))
    return KernelReport(ratios=ratios, tolerance=tolerance)


__all__ = [
    "IdentityReport",
    "Integral",
    "KernelReport",
    "evaluation_functional",
    "integrate",
    "integrate_solution",
    "kernel_check",
    "verify_identity",
]
