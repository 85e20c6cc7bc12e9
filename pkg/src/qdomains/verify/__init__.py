"""Floating-point checks: the quadrature identity, the disk pressure field
and the ball identity."""

from .ball import (
    BallReport,
    BallSpec,
    ball_identity_check,
    harmonic_basis,
    harmonic_projection,
    parse_polynomial,
)
from .identity import (
    IdentityReport,
    Integral,
    KernelReport,
    evaluation_functional,
    integrate,
    integrate_solution,
    kernel_check,
    verify_identity,
)
from .pressure import (
    FarFieldReport,
    PressureExpr,
    PressureReport,
    far_field_check,
    pde_residual,
    pressure_disk,
    source_strengths,
    verify_pressure,
)

__all__ = [
    "BallReport",
    "BallSpec",
    "FarFieldReport",
    "IdentityReport",
    "Integral",
    "KernelReport",
    "PressureExpr",
    "PressureReport",
    "ball_identity_check",
    "evaluation_functional",
    "far_field_check",
    "harmonic_basis",
    "harmonic_projection",
    "integrate",
    "integrate_solution",
    "kernel_check",
    "parse_polynomial",
    "pde_residual",
    "pressure_disk",
    "source_strengths",
    "verify_identity",
    "verify_pressure",
]
