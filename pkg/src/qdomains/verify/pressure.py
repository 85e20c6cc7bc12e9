"""Closed-form pressure of a disk growing in the axis medium ``κ = 1/x²``.

The field lives in the log-extended ring ``Q[X, Y, L, Λ]`` with local
coordinates ``X = x − x1``, ``Y = y − y1``, ``L = log ρ`` and ``Λ = log r``
kept symbolic, divided by a power of ``ρ² = X² + Y²``. Derivatives stay in
the ring because ``∂X L = X/ρ²`` and ``∂Y L = Y/ρ²``.
"""

from __future__ import annotations

import logging
import math
from typing import Any

import numpy as np
from pydantic import Field, field_validator
from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from .._types import ExactReal
from ..algebra.diffop import DiffOp2
from ..algebra.field import as_gaussrat, gaussrat, rational, to_complex
from ..algebra.poly2 import POLY2, Z, conjugate, evaluate, lambdify
from ..base import BaseSchema
from ..intertwine.intertwine import build_axis
from ..serialize import format_rational

logger = logging.getLogger(__name__)

PRESSURE_RING, PX, PY, PL, PLAM = ring("X,Y,L,lam", QQ, grlex)

BOUNDARY_SAMPLES = 256
KINEMATIC_SAMPLES = 64
SOURCE_SAMPLES = 512
SOURCE_RADII = (1e-2, 1e-3, 1e-4)
CONSTANCY_TOLERANCE = 1e-10
KINEMATIC_TOLERANCE = 1e-8
SOURCE_TOLERANCE = 1e-6
FAR_FIELD_TOLERANCE = 1e-2


def _pressure_poly(value) -> PolyElement:
    if isinstance(value, PolyElement):
        if value.ring != PRESSURE_RING:
            raise ValueError("Pressure numerators must live in the (X, Y, L, lam) ring.")
        return value
    if isinstance(value, (list, tuple)):
        poly = PRESSURE_RING.zero
        for row in value:
            if len(row) != 5:
                raise ValueError(f"Pressure terms are [i, j, k, l, coeff]; got {row!r}.")
            *exponents, coeff = row
            if any(int(e) < 0 for e in exponents):
                raise ValueError(f"Negative exponent in pressure term {row!r}.")
            poly += PRESSURE_RING({tuple(int(e) for e in exponents): rational(coeff)})
        return poly
    raise ValueError(
        f"Invalid pressure numerator {value!r}: expected a term list "
        f"or a polynomial; got {type(value).__name__}."
    )


class PressureExpr(BaseSchema):
    """``P = scale · N(X, Y, log ρ, log r) / ρ^{2m}``.

    Parameters
    ----------
    numerator : PolyElement
        ``N`` in :data:`PRESSURE_RING`, at most linear in ``L`` and ``lam``.
    pole_order : int
        ``m``.
    x1, y1 : Rat
        Source location.
    r : Rat
        Disk radius; ``lam`` stands for ``log r``.
    scale : Rat
        Overall factor.
    """

    _emit_type = False
    _exclude_fields = {"numerator"}

    numerator: Any
    pole_order: int = Field(..., ge=0)
    x1: ExactReal
    y1: ExactReal = Field(default=QQ(0))
    r: ExactReal
    scale: ExactReal

    @field_validator("numerator", mode="before")
    @classmethod
    def _coerce_numerator(cls, value):
        return _pressure_poly(value)

    def to_config(self) -> dict:
        terms = [
            [*monom, format_rational(coeff)]
            for monom, coeff in sorted(self.numerator.terms(), reverse=True)
        ]
        return {"numerator": terms, **super().to_config()}

    def _x(self) -> PolyElement:
        return PX + self.x1

    def diff_x(self) -> PressureExpr:
        """``∂P/∂x`` with the pole order raised by one."""
        N, m = self.numerator, self.pole_order
        R2 = PX**2 + PY**2
        numerator = R2 * N.diff(PX) + PX * N.diff(PL) - 2 * m * PX * N
        return self.model_copy(update={"numerator": numerator, "pole_order": m + 1})

    def diff_y(self) -> PressureExpr:
        N, m = self.numerator, self.pole_order
        R2 = PX**2 + PY**2
        numerator = R2 * N.diff(PY) + PY * N.diff(PL) - 2 * m * PY * N
        return self.model_copy(update={"numerator": numerator, "pole_order": m + 1})

    def split(self) -> dict[str, PolyElement]:
        """Parts of ``N`` multiplying 1, ``log ρ`` and ``log r``."""
        parts = {"regular": PRESSURE_RING.zero, "log": PRESSURE_RING.zero, "lam": PRESSURE_RING.zero}
        for (i, j, k, l), coeff in self.numerator.terms():
            key = "log" if k else ("lam" if l else "regular")
            parts[key] += PRESSURE_RING({(i, j, 0, 0): coeff})
        return parts

    def __call__(self, x, y) -> np.ndarray:
        """Numeric value at points ``(x, y)``."""
        return self.local(
            np.asarray(x, dtype=float) - float(self.x1),
            np.asarray(y, dtype=float) - float(self.y1),
        )

    def local(self, X, Y) -> np.ndarray:
        """Numeric value at offsets ``(X, Y)`` from the source; ``log r`` is
        evaluated here only."""
        X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
        R2 = X**2 + Y**2
        values = {"X": X, "Y": Y, "L": 0.5 * np.log(R2), "lam": math.log(float(self.r))}
        total = np.zeros_like(X)
        for (i, j, k, l), coeff in sorted(self.numerator.terms()):
            total = total + float(coeff) * X**i * Y**j * values["L"] ** k * values["lam"] ** l
        return float(self.scale) * total / R2**self.pole_order


def pressure_disk(r, rdot, z1, source_normalized: bool = True) -> PressureExpr:
    """Exact pressure of the disk ``|z − z1| = r`` growing at rate ``ṙ``.

    ``P = s·[(2x1x + ρ² + r²) log ρ − r²x(x − x1)/ρ² − ρ² + x(x − x1) − (2x1x + ρ²) log r]``
    with ``s = −rṙ/2``, the normalization under which ``∇κ∇P = −π q̂ δ``
    and ``dr/dt = −(1/x²) ∂P/∂n``. ``source_normalized=False`` uses the
    literal prefactor ``s = rṙ``.

    Raises
    ------
    ValueError
        If ``x1 = 0`` or ``r ≤ 0``.
    """
    r, rdot = rational(r), rational(rdot)
    z1 = as_gaussrat(z1)
    x1, y1 = z1.x, z1.y
    if not x1:
        raise ValueError("The source must lie off the axis x = 0.")
    if not r > 0:
        raise ValueError(f"Disk radius must be positive; got {r}.")
    x = PX + x1
    R2 = PX**2 + PY**2
    linear = x * (2 * x1) + R2
    inner = (linear + r**2) * PL - R2 + x * PX - linear * PLAM
    numerator = R2 * inner - x * PX * r**2
    scale = -r * rdot / 2 if source_normalized else r * rdot
    return PressureExpr(numerator=numerator, pole_order=1, x1=x1, y1=y1, r=r, scale=scale)


class SourceFit(BaseSchema):
    """Monopole and dipole strengths read off one small circle around ``z1``."""

    _emit_type = False

    radius: float
    monopole: float
    dipole: float
    monopole_error: float
    dipole_error: float


class PressureReport(BaseSchema):
    """Outcome of :func:`verify_pressure`; each check carries its own status."""

    _emit_type = False

    pde_residual_zero: bool
    boundary_spread: float = Field(..., description="std/|mean| of P on the boundary.")
    kinematic_error: float = Field(..., description="max |ṙ + ∂nP/x²| / |ṙ|.")
    expected_monopole: float
    expected_dipole: float
    sources: list[SourceFit]
    constancy_tolerance: float = CONSTANCY_TOLERANCE
    kinematic_tolerance: float = KINEMATIC_TOLERANCE
    source_tolerance: float = SOURCE_TOLERANCE

    @property
    def boundary_constant(self) -> bool:
        return self.boundary_spread <= self.constancy_tolerance

    @property
    def kinematic_ok(self) -> bool:
        return self.kinematic_error <= self.kinematic_tolerance

    @property
    def sources_ok(self) -> bool:
        return all(
            fit.monopole_error <= self.source_tolerance
            and fit.dipole_error <= self.source_tolerance
            for fit in self.sources
        )

    @property
    def passed(self) -> bool:
        return self.pde_residual_zero and self.boundary_constant and self.kinematic_ok and self.sources_ok

    def to_config(self) -> dict:
        config = super().to_config()
        config["boundary_constant"] = self.boundary_constant
        config["kinematic_ok"] = self.kinematic_ok
        config["sources_ok"] = self.sources_ok
        config["passed"] = self.passed
        return config


def pde_residual(expr: PressureExpr) -> PolyElement:
    """Numerator of ``x³ρ^{2(m+2)} ∇(1/x²)∇P / scale``; zero for a solution."""
    px, m = expr.diff_x(), expr.pole_order
    pxx, pyy = px.diff_x(), expr.diff_y().diff_y()
    R2 = PX**2 + PY**2
    return expr._x() * (pxx.numerator + pyy.numerator) - 2 * R2 * px.numerator


def _circle(radius: float, samples: int):
    """Offsets ``(X, Y)`` on a circle about the source with the unit normal."""
    theta = 2 * np.pi * np.arange(samples) / samples
    c, s = np.cos(theta), np.sin(theta)
    return radius * c, radius * s, c, s


def _regular_solutions(z1):
    """``T[1]`` and ``Re T[(z − z1)²]`` for the axis intertwiner ``T = x∂x − 1``."""
    T = build_axis(1).T
    quadratic = T.apply((Z - z1) ** 2)
    return T.apply(POLY2.one), (quadratic + conjugate(quadratic)) * gaussrat("1/2")


def _green_functional(expr, dx, dy, psi, radius, samples) -> float:
    """``(1/π) ∮ κ (ψ ∂nP − P ∂nψ) ds`` over the circle ``|z − z1| = radius``."""
    X, Y, c, s = _circle(radius, samples)
    z = complex(float(expr.x1), float(expr.y1)) + X + 1j * Y
    psi_value = lambdify(psi)(z, np.conj(z)).real
    psi_x = lambdify(DiffOp2.d_x().apply(psi))(z, np.conj(z)).real
    psi_y = lambdify(DiffOp2.d_y().apply(psi))(z, np.conj(z)).real
    dn_p = dx.local(X, Y) * c + dy.local(X, Y) * s
    dn_psi = psi_x * c + psi_y * s
    integrand = (psi_value * dn_p - expr.local(X, Y) * dn_psi) / z.real**2
    return float(integrand.sum() * 2 * np.pi * radius / samples / np.pi)


def source_strengths(
    expr: PressureExpr,
    radii=SOURCE_RADII,
    samples: int = SOURCE_SAMPLES,
) -> list[tuple[float, float, float]]:
    """``(radius, q, q_x)``, the coefficients of ``q̂ = q + q_x ∂x`` at the source.

    Integrating by parts moves ``∂x`` onto the test function with a sign, so
    ``∫ψ∇κ∇P = −π (q ψ(z1) − q_x ∂xψ(z1))``.

    Green's second identity against regular solutions of ``∇κ∇ψ = 0`` gives
    the strengths exactly for every radius, up to the trapezoid error.
    """
    z1 = gaussrat(expr.x1, expr.y1)
    psi0, psi2 = _regular_solutions(z1)
    dx, dy = expr.diff_x(), expr.diff_y()
    values0 = to_complex(evaluate(psi0, z1)).real
    values2 = to_complex(evaluate(psi2, z1)).real
    slope2 = to_complex(evaluate(DiffOp2.d_x().apply(psi2), z1)).real
    fits = []
    for radius in radii:
        g0 = _green_functional(expr, dx, dy, psi0, radius, samples)
        g2 = _green_functional(expr, dx, dy, psi2, radius, samples)
        q = -g0 / values0
        qx = (g2 + q * values2) / slope2
        fits.append((radius, q, qx))
    return fits


def verify_pressure(
    expr: PressureExpr,
    rdot=None,
    boundary_samples: int = BOUNDARY_SAMPLES,
    kinematic_samples: int = KINEMATIC_SAMPLES,
) -> PressureReport:
    """PDE, boundary constancy, kinematic and source-strength checks.

    ``rdot`` defaults to the rate implied by a source-normalized ``scale``.
    """
    r = float(expr.r)
    if rdot is None:
        rdot = -2 * float(expr.scale) / r
    rdot = float(rdot)

    residual = pde_residual(expr)
    if residual:
        logger.warning("Pressure PDE residual has %d nonzero terms", len(residual))

    X, Y, _, _ = _circle(r, boundary_samples)
    boundary = expr.local(X, Y)
    spread = float(np.std(boundary) / max(abs(np.mean(boundary)), np.finfo(float).tiny))

    dx, dy = expr.diff_x(), expr.diff_y()
    X, Y, c, s = _circle(r, kinematic_samples)
    dn = dx.local(X, Y) * c + dy.local(X, Y) * s
    x = X + float(expr.x1)
    kinematic = float(np.max(np.abs(rdot + dn / x**2)) / abs(rdot))

    q_expected = 2 * r * rdot
    qx_expected = -q_expected * r**2 / (2 * float(expr.x1))
    sources = [
        SourceFit(
            radius=radius,
            monopole=q,
            dipole=qx,
            monopole_error=abs(q - q_expected) / abs(q_expected),
            dipole_error=abs(qx - qx_expected) / abs(qx_expected),
        )
        for radius, q, qx in source_strengths(expr)
    ]
    report = PressureReport(
        pde_residual_zero=not residual,
        boundary_spread=spread,
        kinematic_error=kinematic,
        expected_monopole=q_expected,
        expected_dipole=qx_expected,
        sources=sources,
    )
    logger.info(
        "Pressure check: pde=%s spread=%.2e kinematic=%.2e",
        report.pde_residual_zero,
        spread,
        kinematic,
    )
    return report


class FarFieldReport(BaseSchema):
    """``κ(z1)(P − P_boundary)`` against the homogeneous ``−rṙ log(ρ/r)``."""

    _emit_type = False

    x1: float
    max_rel_error: float
    tolerance: float = FAR_FIELD_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.max_rel_error <= self.tolerance

    def to_config(self) -> dict:
        config = super().to_config()
        config["passed"] = self.passed
        return config


def far_field_check(
    r=1, rdot=1, x1=1000, radii=(0.05, 0.1, 0.2, 0.4), angles: int = 16
) -> FarFieldReport:
    """Far from the axis the medium is nearly homogeneous around the source."""
    expr = pressure_disk(r, rdot, [x1, 0])
    rf, rdotf, x1f = float(expr.r), float(rational(rdot)), float(expr.x1)
    P_boundary = float(expr.local(np.array([rf]), np.array([0.0]))[0])
    worst = 0.0
    for radius in radii:
        radius = radius * rf
        X, Y, _, _ = _circle(radius, angles)
        scaled = (expr.local(X, Y) - P_boundary) / x1f**2
        expected = -rf * rdotf * math.log(radius / rf)
        worst = max(worst, float(np.max(np.abs(scaled - expected)) / abs(expected)))
    return FarFieldReport(x1=x1f, max_rel_error=worst)


__all__ = [
    "FarFieldReport",
    "PRESSURE_RING",
    "PressureExpr",
    "PressureReport",
    "SourceFit",
    "far_field_check",
    "pde_residual",
    "pressure_disk",
    "source_strengths",
    "verify_pressure",
]
