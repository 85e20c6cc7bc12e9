"""qdomains: quadrature domains for growth in algebraic media.

Build the intertwining operator of a medium (``qdomains.build_bundle``),
take a polynomial conformal map (``qdomains.ConformalMap``), and solve for
the multipole fluxes that make the mapped domain a quadrature domain of the
medium (``qdomains.fluxes_for_map``). Everything symbolic is exact over the
Gaussian rationals; the ``verify`` and ``growth`` subpackages add the
floating-point checks and time evolution. Call ``.to_config()`` on any
result to get its JSON form.
"""

try:
    from importlib.metadata import version

    __version__ = version("qdomains")
except Exception:
    __version__ = "0.0.0"

from . import algebra, domains, errors, fluxes, growth, intertwine, verify
from .base import BaseSchema
from .config import Settings, get_settings
from .domains import ConformalMap, MomentVector, moments, solve_map_from_moments
from .errors import (
    NoConvergence,
    NonUnivalent,
    NotDivisible,
    NotPolynomial,
    QDomainsError,
    SingularSystem,
    SourceOnMirror,
)
from .fluxes import FluxSolution, FluxVector, equivalent_fluxes, fluxes_for_map
from .intertwine import (
    AxisMedium,
    DeformedMedium,
    DihedralMedium,
    IntertwinerBundle,
    build_bundle,
    check_intertwining,
    parse_medium,
)

__all__ = [
    "AxisMedium",
    "BaseSchema",
    "ConformalMap",
    "DeformedMedium",
    "DihedralMedium",
    "FluxSolution",
    "FluxVector",
    "IntertwinerBundle",
    "MomentVector",
    "NoConvergence",
    "NonUnivalent",
    "NotDivisible",
    "NotPolynomial",
    "QDomainsError",
    "Settings",
    "SingularSystem",
    "SourceOnMirror",
    "algebra",
    "build_bundle",
    "check_intertwining",
    "domains",
    "equivalent_fluxes",
    "errors",
    "fluxes",
    "fluxes_for_map",
    "get_settings",
    "growth",
    "intertwine",
    "moments",
    "parse_medium",
    "solve_map_from_moments",
    "verify",
]
