"""Polynomial conformal maps of the unit disk.

``z(w) = z1 + r·w + Σ_i u_i w^(i+1)`` with ``r`` real and positive. The map is
exact (Gaussian-rational coefficients); numeric sampling goes through numpy.
"""

from __future__ import annotations

import logging

import numpy as np
import pandas as pd
from numpy.polynomial import polynomial as npoly
from pydantic import Field, field_validator

from .._types import ExactComplex, ExactReal
from ..algebra.field import ZERO, GaussRat, gaussrat, i_power, to_complex
from ..algebra.laurent import LaurentPoly
from ..base import BaseSchema

logger = logging.getLogger(__name__)

#: Critical points of z′ must lie at least this far outside the unit circle.
ROOT_MARGIN = 1e-9
#: Smallest allowed boundary speed min|z′(e^{iτ})| relative to r.
MIN_SPEED_RATIO = 0.05
#: Boundary samples used for the self-intersection test.
UNIVALENCE_SAMPLES = 2048
_BLOCK = 256


class ConformalMap(BaseSchema):
    """Polynomial map of the unit disk onto an algebraic domain.

    Parameters
    ----------
    z1 : GaussRat
        Image of the disk center; the source location.
    r : Rat
        Conformal radius, real and positive.
    u : list of GaussRat
        Higher coefficients; ``u[i-1]`` multiplies ``w^(i+1)``.

    Examples
    --------
    >>> ConformalMap(z1=[2, 0], r=1, u=["1/4"]).degree
    1
    """

    _emit_type = False

    z1: ExactComplex = Field(default=ZERO, description="Source location z(0).")
    r: ExactReal = Field(..., description="Conformal radius z′(0) > 0.")
    u: list[ExactComplex] = Field(
        default_factory=list, description="Coefficients u_1..u_k of w^2..w^(k+1)."
    )

    @field_validator("r")
    @classmethod
    def _positive_radius(cls, r):
        if not r > 0:
            raise ValueError(f"Conformal radius must be positive; got {r}.")
        return r

    @classmethod
    def disk(cls, r, z1=ZERO) -> ConformalMap:
        return cls(z1=z1, r=r)

    @property
    def degree(self) -> int:
        """Number of higher coefficients k̃ (the map has degree k̃ + 1)."""
        return len(self.u)

    # Exact views ----------------------------------------------------------

    def coefficients(self) -> list[GaussRat]:
        """``[z1, r, u_1, .., u_k]``, ascending powers of ``w``."""
        return [self.z1, gaussrat(self.r), *self.u]

    def laurent(self) -> LaurentPoly:
        return LaurentPoly.from_terms(dict(enumerate(self.coefficients())))

    def centered(self) -> LaurentPoly:
        """``z(w) − z1``."""
        return LaurentPoly.from_terms(
            {k: c for k, c in enumerate(self.coefficients()) if k}
        )

    def conjugate_reciprocal(self) -> LaurentPoly:
        """``z̄(1/w)``, equal to ``conj z(w)`` on the unit circle."""
        return self.laurent().conjugate_reciprocal()

    def derivative(self) -> LaurentPoly:
        return LaurentPoly.from_terms(
            {k - 1: c * k for k, c in enumerate(self.coefficients()) if k}
        )

    def rotated(self, quarter_turns: int) -> ConformalMap:
        """The domain rotated about ``z1`` by ``quarter_turns·π/2``.

        ``u_i`` picks up the phase ``e^{−i·iγ}``, so moments transform as
        ``M_p → e^{ipγ} M_p``.
        """
        return self.model_copy(
            update={
                "u": [c * i_power(-quarter_turns * i) for i, c in enumerate(self.u, 1)]
            }
        )

    # Numeric views --------------------------------------------------------

    def complex_coefficients(self) -> np.ndarray:
        return np.array([to_complex(c) for c in self.coefficients()], dtype=complex)

    def __call__(self, w) -> np.ndarray:
        return npoly.polyval(np.asarray(w, dtype=complex), self.complex_coefficients())

    def derivative_at(self, w) -> np.ndarray:
        return npoly.polyval(
            np.asarray(w, dtype=complex), npoly.polyder(self.complex_coefficients())
        )

    def boundary_points(self, n: int) -> np.ndarray:
        """``z(e^{2πik/n})`` for ``k = 0..n−1``, counterclockwise."""
        if n < 3:
            raise ValueError(f"Need at least 3 boundary samples; got {n}.")
        return self(np.exp(2j * np.pi * np.arange(n) / n))

    def boundary_frame(self, n: int) -> pd.DataFrame:
        points = self.boundary_points(n)
        return pd.DataFrame({"x": points.real, "y": points.imag})

    @classmethod
    def from_complex(cls, z1: complex, r: float, u) -> ConformalMap:
        """Build from floats; every value is rationalized."""
        return cls(z1=complex(z1), r=float(r), u=[complex(c) for c in u])


class UnivalenceReport(BaseSchema):
    """Result of :func:`univalence_check`.

    ``min_root_modulus`` is None when ``z′`` has no roots.
    """

    _emit_type = False

    passed: bool
    min_root_modulus: float | None = None
    min_speed_ratio: float
    self_intersections: int = 0
    reasons: list[str] = Field(default_factory=list)


def _cross(u, v):
    return u.real * v.imag - u.imag * v.real


def _crossings(points: np.ndarray) -> int:
    """Count properly crossing pairs of non-adjacent closed-polygon edges."""
    a = points
    b = np.roll(points, -1)
    n = len(points)
    d = b - a
    idx = np.arange(n)
    count = 0
    for start in range(0, n, _BLOCK):
        rows = slice(start, min(start + _BLOCK, n))
        ai, di = a[rows, None], d[rows, None]

        o1 = _cross(di, a[None, :] - ai)
        o2 = _cross(di, b[None, :] - ai)
        o3 = _cross(d[None, :], ai - a[None, :])
        o4 = _cross(d[None, :], ai + di - a[None, :])
        hit = (o1 * o2 < 0) & (o3 * o4 < 0)
        gap = np.abs(idx[rows, None] - idx[None, :])
        hit &= (gap > 1) & (gap < n - 1)
        count += int(np.count_nonzero(np.triu(hit, k=start + 1)))
    return count


def univalence_check(
    conformal_map: ConformalMap, samples: int = UNIVALENCE_SAMPLES
) -> UnivalenceReport:
    """Certify that the map is injective on the closed disk.

    Three criteria must all hold: every root of ``z′`` lies outside
    ``|w| = 1 + 1e−9``; the boundary speed ``min|z′(e^{iτ})|`` is at least
    ``0.05·r``; the sampled boundary polygon has no self-crossing.
    """
    reasons = []
    derivative = npoly.polyder(conformal_map.complex_coefficients())
    derivative = np.trim_zeros(derivative, "b")
    roots = npoly.polyroots(derivative) if len(derivative) > 1 else np.array([])
    min_root = float(np.min(np.abs(roots))) if roots.size else None
    if min_root is not None and min_root < 1 + ROOT_MARGIN:
        reasons.append(f"z′ vanishes at |w| = {min_root:.6g} inside the closed disk")

    tau = np.exp(2j * np.pi * np.arange(samples) / samples)
    speed = np.abs(conformal_map.derivative_at(tau))
    ratio = float(speed.min() / float(conformal_map.r))
    if ratio < MIN_SPEED_RATIO:
        reasons.append(f"boundary speed ratio {ratio:.3g} is below {MIN_SPEED_RATIO}")

    crossings = _crossings(conformal_map(tau))
    if crossings:
        reasons.append(f"boundary polygon crosses itself {crossings} times")

    if reasons:
        logger.info("Map is not univalent: %s", "; ".join(reasons))
    return UnivalenceReport(
        passed=not reasons,
        min_root_modulus=min_root,
        min_speed_ratio=ratio,
        self_intersections=crossings,
        reasons=reasons,
    )


__all__ = [
    "ConformalMap",
    "MIN_SPEED_RATIO",
    "ROOT_MARGIN",
    "UnivalenceReport",
    "univalence_check",
]
