"""Exceptions raised by qdomains.

Every error the library raises on purpose derives from :class:`QDomainsError`,
and additionally from the closest builtin category so callers that only know
``ValueError`` or ``ArithmeticError`` still catch the right things.
"""

from __future__ import annotations

from typing import Any


class QDomainsError(Exception):
    """Base class of all qdomains errors."""


class NotDivisible(QDomainsError, ArithmeticError):
    """An exact division left a nonzero remainder."""


class NotPolynomial(QDomainsError, ValueError):
    """A construction that must produce a polynomial did not.

    Raised when a trigonometric expression carries a harmonic that cannot be
    written as a polynomial in (z, z̄) for its power of ρ, or when a deformed
    Wronskian ratio does not divide exactly.
    """


class SourceOnMirror(QDomainsError, ValueError):
    """The source point lies on the singular locus ζ = 0 of the medium."""


class SingularSystem(QDomainsError, ArithmeticError):
    """The flux system has no unique solution."""


class NoConvergence(QDomainsError, RuntimeError):
    """An iterative solver or refinement loop ran out of budget."""


class NonUnivalent(QDomainsError, RuntimeError):
    """A conformal map failed the univalence check.

    Parameters
    ----------
    message : str
        Human-readable description.
    report : Any, optional
        The :class:`~qdomains.domains.UnivalenceReport` that failed.
    frames : list, optional
        Frames computed before the failure (growth only).
    breakdown_time : tuple of float, optional
        ``(t_valid, t_invalid)`` bracket of the breakdown time (growth only).
    """

    def __init__(
        self,
        message: str,
        report: Any = None,
        frames: list | None = None,
        breakdown_time: tuple[float, float] | None = None,
    ):
        super().__init__(message)
        self.report = report
        self.frames = list(frames or [])
        self.breakdown_time = breakdown_time

    @property
    def last_frame(self):
        """The last valid frame, or ``None`` when nothing was solved."""
        return self.frames[-1] if self.frames else None


__all__ = [
    "NoConvergence",
    "NonUnivalent",
    "NotDivisible",
    "NotPolynomial",
    "QDomainsError",
    "SingularSystem",
    "SourceOnMirror",
]
