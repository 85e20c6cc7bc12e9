"""Quadrature functionals, flux linear forms and the exact flux solve."""

from .fluxes import (
    EquationResidual,
    FluxLinearForms,
    FluxSolution,
    FluxVector,
    QuadratureFunctional,
    equivalent_fluxes,
    flux_count,
    fluxes_for_map,
    functional_length,
    homogeneous_targets,
    lhs_functionals,
    rhs_forms,
    solve_fluxes,
    to_source_strengths,
)

__all__ = [
    "EquationResidual",
    "FluxLinearForms",
    "FluxSolution",
    "FluxVector",
    "QuadratureFunctional",
    "equivalent_fluxes",
    "flux_count",
    "fluxes_for_map",
    "functional_length",
    "homogeneous_targets",
    "lhs_functionals",
    "rhs_forms",
    "solve_fluxes",
    "to_source_strengths",
]
