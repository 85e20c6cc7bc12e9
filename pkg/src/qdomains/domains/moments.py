"""Richardson moments of polynomial domains and their inversion.

For analytic ``f`` Green's theorem turns the area integral into a residue::

    ∫_Ω f dxdy = π · res_{w=0} [ z̄(1/w) · f(z(w)) · z′(w) ]

so the moments ``M_p = ∫_Ω (z − z1)^p dxdy`` are exact Gaussian rationals times
π. :class:`MomentVector` stores the reduced values ``m_p = M_p / π``.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from numpy.polynomial import polynomial as npoly
from pydantic import Field
from scipy import linalg

from .._types import ExactComplex
from ..algebra.field import GaussRat, to_complex
from ..algebra.laurent import residue
from ..base import BaseSchema
from ..errors import NoConvergence, NonUnivalent
from .conformal_map import ConformalMap, univalence_check

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 50
TOLERANCE = 1e-12
_MAX_HALVINGS = 30


class MomentVector(BaseSchema):
    """Reduced moments ``m_p = M_p / π`` for ``p = 0..P``.

    Examples
    --------
    >>> MomentVector(reduced=["1", "0"]).values()
    array([3.14159265+0.j, 0.        +0.j])
    """

    _emit_type = False

    reduced: list[ExactComplex] = Field(
        ..., min_length=1, description="M_p / π as exact Gaussian rationals."
    )

    @property
    def pmax(self) -> int:
        return len(self.reduced) - 1

    def values(self) -> np.ndarray:
        """``M_p`` as floating-point complex numbers."""
        return math.pi * np.array([to_complex(m) for m in self.reduced], dtype=complex)


def reduced_moment(conformal_map: ConformalMap, p: int) -> GaussRat:
    """``M_p / π = res[z̄(1/w) (z(w) − z1)^p z′(w)]``."""
    integrand = (
        conformal_map.conjugate_reciprocal()
        * conformal_map.centered() ** p
        * conformal_map.derivative()
    )
    return residue(integrand)


def moments(conformal_map: ConformalMap, pmax: int) -> MomentVector:
    """Exact moments ``M_0..M_pmax``."""
    return MomentVector(reduced=[reduced_moment(conformal_map, p) for p in range(pmax + 1)])


class _NumericMap:
    """Float coefficients of ``z̄(1/w)``, ``z − z1`` and ``z′`` for Newton."""

    def __init__(self, r: float, u: np.ndarray):
        self.r = r
        self.u = u
        self.k = len(u)
        # z(w) − z1 in ascending powers; index i is w^i
        self.centered = np.concatenate([[0.0, r], u]).astype(complex)
        self.derivative = npoly.polyder(self.centered)
        # b[j] multiplies w^{-j} in z̄(1/w); b[0] = z̄1 never reaches a residue
        self.reciprocal = np.concatenate([[0.0, r], np.conj(u)]).astype(complex)

    def residue_with_reciprocal(self, poly: np.ndarray) -> complex:
        """``res[z̄(1/w)·poly(w)] = Σ_j b_j [w^{j−1}] poly``."""
        b = self.reciprocal[1:]
        c = np.zeros(len(b), dtype=complex)
        n = min(len(b), len(poly))
        c[:n] = poly[:n]
        return complex(np.dot(b, c))

    def power(self, p: int) -> np.ndarray:
        return npoly.polypow(self.centered, p) if p else np.array([1.0 + 0j])

    @staticmethod
    def coefficient(poly: np.ndarray, k: int) -> complex:
        return complex(poly[k]) if k < len(poly) else 0j

    def moment(self, p: int) -> complex:
        return self.residue_with_reciprocal(npoly.polymul(self.power(p), self.derivative))

    def gradient(self, p: int) -> np.ndarray:
        """Derivatives of ``m_p`` by ``r`` and by Re, Im of each ``u_i``."""
        zc_p = self.power(p)
        zc_pm1 = self.power(p - 1) if p else np.zeros(1, dtype=complex)
        plain = npoly.polymul(zc_p, self.derivative)

        def holomorphic(d_centered: np.ndarray, d_derivative: np.ndarray) -> complex:
            term = npoly.polymul(p * zc_pm1, npoly.polymul(d_centered, self.derivative))
            term = npoly.polyadd(term, npoly.polymul(zc_p, d_derivative))
            return self.residue_with_reciprocal(term)

        grad = np.zeros(1 + 2 * self.k, dtype=complex)
        # r enters z̄(1/w) as w^{-1}, z − z1 as w and z′ as 1
        grad[0] = self.coefficient(plain, 0) + holomorphic(
            np.array([0, 1], dtype=complex), np.array([1], dtype=complex)
        )
        for i in range(1, self.k + 1):
            d_centered = np.zeros(i + 2, dtype=complex)
            d_centered[i + 1] = 1
            d_derivative = np.zeros(i + 1, dtype=complex)
            d_derivative[i] = i + 1
            d_u = holomorphic(d_centered, d_derivative)
            d_ubar = self.coefficient(plain, i)
            grad[2 * i - 1] = d_u + d_ubar
            grad[2 * i] = 1j * (d_u - d_ubar)
        return grad


def _unpack(params: np.ndarray) -> tuple[float, np.ndarray]:
    return float(params[0]), params[1::2] + 1j * params[2::2]


def _residual(params: np.ndarray, targets: np.ndarray) -> np.ndarray:
    r, u = _unpack(params)
    num = _NumericMap(r, u)
    out = [(num.moment(0) - targets[0]).real]
    for p in range(1, len(targets)):
        diff = num.moment(p) - targets[p]
        out.extend([diff.real, diff.imag])
    return np.array(out)


def _jacobian(params: np.ndarray, count: int) -> np.ndarray:
    r, u = _unpack(params)
    num = _NumericMap(r, u)
    rows = [num.gradient(0).real]
    for p in range(1, count):
        grad = num.gradient(p)
        rows.extend([grad.real, grad.imag])
    return np.array(rows)


def solve_map_from_moments(
    targets: MomentVector,
    guess: ConformalMap | None = None,
    z1: GaussRat | None = None,
    max_iterations: int = MAX_ITERATIONS,
    tolerance: float = TOLERANCE,
    check_univalence: bool = True,
) -> ConformalMap:
    """Find ``r > 0`` and ``u_1..u_P`` whose moments match ``targets``.

    Newton's method on the real unknowns ``(r, Re u_i, Im u_i)`` with an
    analytic Jacobian and step halving that keeps ``r`` positive and reduces
    the residual. The cold start is the disk of the target area.

    Raises
    ------
    ValueError
        If the target area ``M_0`` is not positive.
    NoConvergence
        If ``‖F‖ ≤ tolerance·(1 + ‖M‖)`` is not reached within
        ``max_iterations``.
    NonUnivalent
        If the converged map fails :func:`univalence_check`.
    """
    reduced = np.array([to_complex(m) for m in targets.reduced], dtype=complex)
    if not reduced[0].real > 0:
        raise ValueError(f"Target area M0 must be positive; got {math.pi * reduced[0].real}.")
    count = len(reduced)
    if guess is None:
        guess = ConformalMap.disk(math.sqrt(reduced[0].real), z1 if z1 is not None else 0)
    if z1 is None:
        z1 = guess.z1
    u0 = np.zeros(count - 1, dtype=complex)
    for i, c in enumerate(guess.u[: count - 1]):
        u0[i] = to_complex(c)
    params = np.empty(2 * count - 1)
    params[0] = float(guess.r)
    params[1::2], params[2::2] = u0.real, u0.imag

    scale = 1 + math.pi * float(np.linalg.norm(reduced))
    F = _residual(params, reduced)
    for iteration in range(max_iterations + 1):
        norm = math.pi * float(np.linalg.norm(F))
        logger.debug("Newton iteration %d: |F| = %.3e", iteration, norm)
        if norm <= tolerance * scale:
            break
        if iteration == max_iterations:
            raise NoConvergence(
                f"Moment inversion did not converge in {max_iterations} iterations "
                f"(|F| = {norm:.3e})."
            )
        try:
            step = linalg.solve(_jacobian(params, count), -F)
        except linalg.LinAlgError as err:
            raise NoConvergence(f"Singular moment Jacobian at iteration {iteration}.") from err
        alpha = 1.0
        for _ in range(_MAX_HALVINGS):
            trial = params + alpha * step
            if trial[0] > 0:
                trial_F = _residual(trial, reduced)
                if np.linalg.norm(trial_F) < np.linalg.norm(F) or alpha < 1e-6:
                    break
            alpha /= 2
        else:
            raise NoConvergence("Line search could not keep r positive.")
        params, F = trial, trial_F

    r, u = _unpack(params)
    solved = ConformalMap(z1=z1, r=float(r), u=[complex(c) for c in u])
    if check_univalence:
        report = univalence_check(solved)
        if not report.passed:
            raise NonUnivalent(
                "Moment inversion converged to a non-univalent map: "
                + "; ".join(report.reasons),
                report=report,
            )
    return solved


__all__ = [
    "MAX_ITERATIONS",
    "MomentVector",
    "moments",
    "reduced_moment",
    "solve_map_from_moments",
]
