"""Multipole fluxes that turn a polynomial domain into a quadrature domain.

For a medium with intertwiner T and a map ``z(w)`` centered at the source
``z1`` the quadrature identity

    ∫_Ω φ dxdy = π·(Q φ(z1) + Σ_j Q_j ∂z^j φ(z1) + Σ_j Q̄_j ∂z̄^j φ(z1))

is imposed on the solutions ``φ = T[(z − z1)^p / p!]`` and
``φ = T[(z̄ − z̄1)^p / p!]`` for ``p = 0..P``. The left sides ``V_p`` are
residues, the right sides ``U_p`` are linear forms in the unknowns
``[Q, Q̄, Q_1..Q_K, Q̄_1..Q̄_K]``; the overdetermined system is solved exactly.
"""

from __future__ import annotations

import logging
from math import factorial
from typing import Literal

from pydantic import Field
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .._types import ExactComplex, ExactReal
from ..algebra.diffop import DiffOp2, apply_to_analytic
from ..algebra.field import ZERO, GaussRat, conj, gaussrat, inverse_factorial, is_real
from ..algebra.laurent import LaurentPoly, residue, substitute
from ..algebra.poly2 import POLY2, Z, ZB, antiderivative_zbar, evaluate, shift, total_degree
from ..base import BaseSchema
from ..config import parallel_map
from ..domains.conformal_map import ConformalMap
from ..domains.moments import MomentVector, solve_map_from_moments
from ..errors import SingularSystem, SourceOnMirror
from ..intertwine.intertwine import IntertwinerBundle, build_bundle
from ..intertwine.media import Medium

logger = logging.getLogger(__name__)

Family = Literal["holomorphic", "conjugate"]


def flux_count(map_degree: int, zeta_degree: int) -> int:
    """Number K of multipole coefficients, ``(k̃+1)(D+1) − 1``."""
    return (map_degree + 1) * (zeta_degree + 1) - 1


def functional_length(map_degree: int, zeta_degree: int) -> int:
    """Largest p with a possibly nonzero ``V_p``, ``(k̃+2)(D+1) − 2``."""
    return (map_degree + 2) * (zeta_degree + 1) - 2


class FluxVector(BaseSchema):
    """Monopole flux Q and multipole fluxes Q_1..Q_K.

    Values follow the quadrature-identity convention (no ``(−1)^j`` factors).
    """

    _emit_type = False

    Q: ExactReal
    Qj: list[ExactComplex] = Field(default_factory=list)

    @property
    def K(self) -> int:
        return len(self.Qj)


class QuadratureFunctional(BaseSchema):
    """Left sides ``V_p = (1/π p!) ∫_Ω T[(z − z1)^p] dxdy`` and their
    conjugate-family counterparts ``V′_p``."""

    _emit_type = False

    V: list[ExactComplex]
    V_conj: list[ExactComplex]

    @property
    def pmax(self) -> int:
        return len(self.V) - 1


class FluxLinearForms(BaseSchema):
    """Right sides ``U_p`` as coefficient rows over the unknowns
    ``[Q, Q̄, Q_1..Q_K, Q̄_1..Q̄_K]``."""

    _emit_type = False

    K: int = Field(..., ge=0)
    U: list[list[ExactComplex]]
    U_conj: list[list[ExactComplex]]

    @property
    def unknowns(self) -> int:
        return 2 * (self.K + 1)


class EquationResidual(BaseSchema):
    """Exact residual ``U_p − V_p`` of one equation after the solve."""

    _emit_type = False

    family: Family
    p: int
    dropped: bool = Field(..., description="Not part of the square subsystem.")
    residual: ExactComplex


class FluxSolution(BaseSchema):
    """Solved unknowns with the residual of every equation.

    ``q_real`` holds when Q came out real and equal to its conjugate-family
    twin Q̄; ``conjugate_consistent`` when every ``Q̄_j = conj(Q_j)``.
    """

    _emit_type = False

    Q: ExactComplex
    Q_bar: ExactComplex
    Qj: list[ExactComplex]
    Qj_bar: list[ExactComplex]
    drop: int
    residuals: list[EquationResidual]
    medium: str | None = None
    conformal_map: ConformalMap | None = None

    @property
    def q_real(self) -> bool:
        return is_real(self.Q) and self.Q_bar == self.Q

    @property
    def conjugate_consistent(self) -> bool:
        return all(b == conj(a) for a, b in zip(self.Qj, self.Qj_bar))

    @property
    def consistent(self) -> bool:
        return all(not eq.residual for eq in self.residuals)

    @property
    def passed(self) -> bool:
        return self.consistent and self.q_real and self.conjugate_consistent

    @property
    def fluxes(self) -> FluxVector:
        """The public flux vector; ``Q`` keeps only its real part."""
        if not self.q_real:
            logger.warning(
                "Monopole flux Q = %s is not real or disagrees with Q̄ = %s; "
                "reporting its real part only",
                self.Q,
                self.Q_bar,
            )
        return FluxVector(Q=self.Q.x, Qj=list(self.Qj))

    def to_config(self) -> dict:
        config = super().to_config()
        config["q_real"] = self.q_real
        config["conjugate_consistent"] = self.conjugate_consistent
        config["passed"] = self.passed
        return config


def _holomorphic_functional(T: DiffOp2, conformal_map: ConformalMap, pmax: int) -> list[GaussRat]:
    """``V_p = Σ_a res[G_a(z(w), z̄(1/w)) z′(w) (z(w) − z1)^{p−a}] / (p−a)!``."""
    zw = conformal_map.laurent()
    zbw = conformal_map.conjugate_reciprocal()
    dz = conformal_map.derivative()
    centered = conformal_map.centered()
    columns = apply_to_analytic(T, z1=conformal_map.z1)
    lifted = [
        substitute(antiderivative_zbar(B), zw, zbw) * dz if B else LaurentPoly()
        for B in columns
    ]
    powers = [LaurentPoly.constant(QQ_I.one)]
    for _ in range(pmax):
        powers.append(powers[-1] * centered)

    def value(p: int) -> GaussRat:
        total = ZERO
        for a, H in enumerate(lifted):
            if a > p or not H:
                continue
            total += residue(H * powers[p - a]) * inverse_factorial(p - a)
        return total

    return list(parallel_map(value, range(pmax + 1)))


def lhs_functionals(
    bundle: IntertwinerBundle, conformal_map: ConformalMap, pmax: int | None = None
) -> QuadratureFunctional:
    """Exact left sides of both equation families.

    ``pmax`` defaults to ``(k̃+2)(D+1) − 2``, beyond which every ``V_p``
    vanishes.
    """
    if pmax is None:
        pmax = functional_length(conformal_map.degree, total_degree(bundle.zeta))
    V = _holomorphic_functional(bundle.T, conformal_map, pmax)
    V_conj = [conj(v) for v in _holomorphic_functional(bundle.T.conjugate(), conformal_map, pmax)]
    return QuadratureFunctional(V=V, V_conj=V_conj)


def _form_row(g, z1: GaussRat, K: int, family: Family) -> list[GaussRat]:
    h = shift(g, z1)
    row = [ZERO] * (2 * (K + 1))
    row[0 if family == "holomorphic" else 1] = h.get((0, 0), ZERO)
    for j in range(1, K + 1):
        scale = QQ_I(factorial(j), 0)
        row[1 + j] = h.get((j, 0), ZERO) * scale
        row[1 + K + j] = h.get((0, j), ZERO) * scale
    return row


def rhs_forms(
    bundle: IntertwinerBundle, z1: GaussRat, K: int, pmax: int | None = None
) -> FluxLinearForms:
    """Linear forms ``U_p = Q̂[T[(z − z1)^p/p!]](z1)`` and the conjugate family.

    Raises
    ------
    SourceOnMirror
        If ζ vanishes at the source.
    """
    if not evaluate(bundle.zeta, z1):
        raise SourceOnMirror(f"The source {z1} lies on a mirror line of {bundle.medium.key()}.")
    if pmax is None:
        pmax = K + total_degree(bundle.zeta)
    T = bundle.T
    hol = Z - z1
    anti = ZB - conj(z1)

    def rows(p: int) -> tuple[list, list]:
        scale = inverse_factorial(p)
        g = T.apply(hol**p * scale) if p else T.apply(POLY2.one)
        g_conj = T.apply(anti**p * scale) if p else g
        return _form_row(g, z1, K, "holomorphic"), _form_row(g_conj, z1, K, "conjugate")

    pairs = list(parallel_map(rows, range(pmax + 1)))
    return FluxLinearForms(K=K, U=[a for a, _ in pairs], U_conj=[b for _, b in pairs])


def solve_fluxes(
    V: QuadratureFunctional, forms: FluxLinearForms, drop: int
) -> FluxSolution:
    """Solve the overdetermined system exactly and report every residual.

    Rows are taken from ``p ≥ drop`` of both families first (interleaved),
    then from ``p < drop``; the first linearly independent rows form the
    square subsystem.

    Raises
    ------
    SingularSystem
        If the full system does not determine all unknowns.
    """
    n = forms.unknowns
    pmax = min(V.pmax, len(forms.U) - 1)
    order = [p for p in range(drop, pmax + 1)] + [p for p in range(min(drop, pmax + 1))]
    equations: list[tuple[Family, int, list, GaussRat]] = []
    for p in order:
        equations.append(("holomorphic", p, forms.U[p], V.V[p]))
        equations.append(("conjugate", p, forms.U_conj[p], V.V_conj[p]))

    A = DomainMatrix([list(row) for _, _, row, _ in equations], (len(equations), n), QQ_I)
    _, pivots = A.transpose().rref()
    if len(pivots) < n:
        raise SingularSystem(
            f"Flux system has rank {len(pivots)} for {n} unknowns; the fluxes are not unique."
        )
    chosen = list(pivots[:n])
    logger.info(
        "Square flux subsystem uses rows %s",
        [f"{equations[i][0][0]}{equations[i][1]}" for i in chosen],
    )
    A_sq = DomainMatrix([list(equations[i][2]) for i in chosen], (n, n), QQ_I)
    b_sq = DomainMatrix([[equations[i][3]] for i in chosen], (n, 1), QQ_I)
    x = [row[0] for row in A_sq.lu_solve(b_sq).to_list()]

    residuals = []
    chosen_set = set(chosen)
    for index, (family, p, row, value) in enumerate(equations):
        lhs = sum((c * xi for c, xi in zip(row, x)), ZERO)
        residual = lhs - value
        if residual and index not in chosen_set:
            logger.warning("Dropped %s equation p=%d has residual %s", family, p, residual)
        residuals.append(
            EquationResidual(family=family, p=p, dropped=index not in chosen_set, residual=residual)
        )
    residuals.sort(key=lambda eq: (eq.p, eq.family != "holomorphic"))

    K = forms.K
    solution = FluxSolution(
        Q=x[0],
        Q_bar=x[1],
        Qj=x[2 : 2 + K],
        Qj_bar=x[2 + K :],
        drop=drop,
        residuals=residuals,
    )
    if not solution.q_real:
        logger.warning("Solved monopole flux %s is not real", x[0])
    return solution


def fluxes_for_map(bundle: IntertwinerBundle, conformal_map: ConformalMap) -> FluxSolution:
    """Assemble and solve the flux system for one (medium, map) pair."""
    D = total_degree(bundle.zeta)
    K = flux_count(conformal_map.degree, D)
    V = lhs_functionals(bundle, conformal_map)
    forms = rhs_forms(bundle, conformal_map.z1, K, V.pmax)
    solution = solve_fluxes(V, forms, drop=bundle.order)
    return solution.model_copy(
        update={"medium": bundle.medium.key(), "conformal_map": conformal_map}
    )


def homogeneous_targets(homog: FluxVector) -> MomentVector:
    """Reduced moments ``m_0 = Q̃`` and ``m_p = p!·Q̃_p`` of a homogeneous flow."""
    if not homog.Q:
        raise ValueError("A homogeneous flow with zero monopole flux has no domain.")
    reduced = [gaussrat(homog.Q)]
    reduced += [q * QQ_I(factorial(p), 0) for p, q in enumerate(homog.Qj, 1)]
    return MomentVector(reduced=reduced)


def equivalent_fluxes(
    homog: FluxVector,
    medium: Medium | str,
    z1: GaussRat,
    guess: ConformalMap | None = None,
) -> FluxSolution:
    """Fluxes a medium needs to grow the domain that ``homog`` grows in a
    homogeneous medium from the same source.

    Raises
    ------
    NoConvergence, NonUnivalent
        From the moment inversion.
    SourceOnMirror
        If the source sits on a mirror line of the medium.
    """
    conformal_map = solve_map_from_moments(homogeneous_targets(homog), guess=guess, z1=z1)
    return fluxes_for_map(build_bundle(medium), conformal_map)


def to_source_strengths(rates: list[complex]) -> list[complex]:
    """Convert flux rates ``dQ_j/dt`` to source strengths ``q_j = (−1)^j dQ_j/dt``."""
    return [rate if j % 2 == 0 else -rate for j, rate in enumerate(rates)]


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
