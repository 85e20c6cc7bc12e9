"""Quadrature identity of the d-ball for the axis medium ``κ = ξ1^{-2}``.

For a harmonic polynomial ``h`` the solution ``φ = (ξ1∂1 − 1)h`` satisfies

    ∫_B φ dV = v_d (φ(c) + r² / ((d+2) c1) ∂1φ(c))

on the ball of radius ``r`` centered at ``c``.
"""

from __future__ import annotations

import logging
import math
from functools import cache

import numpy as np
from pydantic import Field, field_validator, model_validator
from scipy import special
from sympy import QQ, sympify
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from .._types import ExactReal
from ..base import BaseSchema

logger = logging.getLogger(__name__)

BALL_TOLERANCE = 1e-8


@cache
def ball_ring(d: int) -> PolyRing:
    """``Q[xi1, .., xid]`` in graded lexicographic order."""
    return ring(",".join(f"xi{k}" for k in range(1, d + 1)), QQ, grlex)[0]


class BallSpec(BaseSchema):
    """Ball of radius ``r`` centered at ``center`` in ``d`` dimensions.

    Examples
    --------
    >>> round(BallSpec(d=3, r=1, center=[2, 0, 0]).volume(), 6)
    4.18879
    """

    _emit_type = False

    d: int = Field(..., ge=2, description="Dimension.")
    r: ExactReal = Field(..., description="Radius.")
    center: list[ExactReal] = Field(..., description="Center; its first coordinate is nonzero.")

    @field_validator("r")
    @classmethod
    def _positive_radius(cls, r):
        if not r > 0:
            raise ValueError(f"Ball radius must be positive; got {r}.")
        return r

    @model_validator(mode="after")
    def _center_off_axis(self):
        if len(self.center) != self.d:
            raise ValueError(
                f"Center has {len(self.center)} coordinates but d = {self.d}."
            )
        if not self.center[0]:
            raise ValueError("The center must lie off the hyperplane xi1 = 0.")
        return self

    @property
    def ring(self) -> PolyRing:
        return ball_ring(self.d)

    def volume(self) -> float:
        """``v_d = π^{d/2} r^d / Γ(d/2 + 1)``."""
        return math.pi ** (self.d / 2) * float(self.r) ** self.d / special.gamma(self.d / 2 + 1)


def parse_polynomial(text: str, d: int) -> PolyElement:
    """Parse ``text`` such as ``"xi1**2 - xi2**2"`` into :func:`ball_ring`."""
    R = ball_ring(d)
    names = {str(s): s for s in R.symbols}
    try:
        return R.from_expr(sympify(text, locals=names))
    except (ValueError, TypeError, SyntaxError) as err:
        raise ValueError(
            f"Cannot parse {text!r} as a polynomial in {', '.join(names)}."
        ) from err


def laplacian(p: PolyElement) -> PolyElement:
    return sum((p.diff(g).diff(g) for g in p.ring.gens), p.ring.zero)


def harmonic_projection(p: PolyElement) -> PolyElement:
    """Harmonic part of ``p``, computed per homogeneous degree ``N`` as

    ``Σ_j (−1)^j |ξ|^{2j} Δ^j p_N / (2^j j! Π_{i=1}^{j} (2N + d − 2 − 2i))``.
    """
    R = p.ring
    d = R.ngens
    norm2 = sum((g**2 for g in R.gens), R.zero)
    components: dict[int, PolyElement] = {}
    for monom, coeff in p.terms():
        components[sum(monom)] = components.get(sum(monom), R.zero) + R({monom: coeff})
    result = R.zero
    for N, component in components.items():
        term, power, denominator = component, R.one, 1
        for j in range(N // 2 + 1):
            if j:
                term = laplacian(term)
                power = power * norm2
                denominator *= 2 * j * (2 * N + d - 2 - 2 * j)
                if not term:
                    break
            result += term * power * QQ((-1) ** j, denominator)
    return result


def harmonic_basis(d: int, max_degree: int) -> list[PolyElement]:
    """Harmonic projections of all monomials up to ``max_degree``, without
    zeros or repeats."""
    R = ball_ring(d)
    basis: list[PolyElement] = []
    for degree in range(max_degree + 1):
        for monom in _exponents(d, degree):
            h = harmonic_projection(R({monom: QQ(1)}))
            if h and all(h.monic() != b.monic() for b in basis):
                basis.append(h)
    return basis


def _exponents(d: int, degree: int):
    if d == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _exponents(d - 1, degree - first):
            yield (first, *rest)


def _sphere_rule(k: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes on the unit sphere ``S^k ⊂ R^{k+1}`` and their weights.

    The circle uses ``2n`` trapezoid points; higher spheres peel off one
    coordinate ``t`` with weight ``(1 − t²)^{(k−2)/2}`` (Gauss-Jacobi).
    """
    if k == 1:
        tau = 2 * np.pi * np.arange(2 * n) / (2 * n)
        return np.stack([np.cos(tau), np.sin(tau)], axis=1), np.full(2 * n, np.pi / n)
    t, wt = special.roots_jacobi(n, (k - 2) / 2, (k - 2) / 2)
    sub, sub_w = _sphere_rule(k - 1, n)
    scale = np.sqrt(1 - t**2)
    points = np.concatenate(
        [
            np.repeat(t, len(sub))[:, None],
            (scale[:, None, None] * sub[None, :, :]).reshape(-1, k),
        ],
        axis=1,
    )
    return points, np.outer(wt, sub_w).ravel()


def _ball_rule(d: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on the unit d-ball, exact to degree ``2n − 1``."""
    t, wt = special.roots_jacobi(n, 0, d - 1)
    rho = (t + 1) / 2
    rho_w = wt / 2**d
    sphere, sphere_w = _sphere_rule(d - 1, n)
    points = (rho[:, None, None] * sphere[None, :, :]).reshape(-1, d)
    return points, np.outer(rho_w, sphere_w).ravel()


def _evaluate(p: PolyElement, points: np.ndarray) -> np.ndarray:
    total = np.zeros(len(points))
    for monom, coeff in sorted(p.terms()):
        total = total + float(coeff) * np.prod(points**np.array(monom), axis=1)
    return total


class BallReport(BaseSchema):
    """Both sides of the ball identity for one harmonic polynomial."""

    _emit_type = False

    h: str
    lhs: float
    rhs: float
    rel_error: float
    tolerance: float = BALL_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.rel_error <= self.tolerance

    def to_config(self) -> dict:
        config = super().to_config()
        config["passed"] = self.passed
        return config


def ball_identity_check(
    spec: BallSpec, h: PolyElement | str, tolerance: float = BALL_TOLERANCE
) -> BallReport:
    """Integrate ``φ = (ξ1∂1 − 1)h`` over the ball and compare with the identity.

    Raises
    ------
    ValueError
        If ``h`` is not harmonic.
    """
    R = spec.ring
    if isinstance(h, str):
        h = parse_polynomial(h, spec.d)
    if h.ring != R:
        raise ValueError(f"h must be a polynomial in {spec.d} variables.")
    if laplacian(h):
        raise ValueError(f"h = {h.as_expr()} is not harmonic.")
    xi1 = R.gens[0]
    phi = xi1 * h.diff(xi1) - h
    n = max((sum(m) for m in phi.monoms()), default=0) // 2 + 2

    nodes, weights = _ball_rule(spec.d, n)
    center = np.array([float(c) for c in spec.center])
    radius = float(spec.r)
    values = _evaluate(phi, center + radius * nodes) * weights * radius**spec.d
    lhs = float(values.sum())
    magnitude = float(np.abs(values).sum())

    c = center[None, :]
    c1 = center[0]
    phi_c = float(_evaluate(phi, c)[0])
    slope = float(_evaluate(phi.diff(xi1), c)[0])
    rhs = spec.volume() * (phi_c + radius**2 / ((spec.d + 2) * c1) * slope)

    rel_error = abs(lhs - rhs) / max(abs(rhs), magnitude, np.finfo(float).tiny)
    logger.debug("Ball identity for %s: rel error %.3e", h.as_expr(), rel_error)
    return BallReport(
        h=str(h.as_expr()), lhs=lhs, rhs=rhs, rel_error=rel_error, tolerance=tolerance
    )


__all__ = [
    "BALL_TOLERANCE",
    "BallReport",
    "BallSpec",
    "ball_identity_check",
    "ball_ring",
    "harmonic_basis",
    "harmonic_projection",
    "laplacian",
    "parse_polynomial",
]
