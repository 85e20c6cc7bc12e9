"""Intertwining operators, their identity checks and the deformed search."""

from .checks import (
    MonomialResidual,
    ResidualReport,
    check_intertwining,
    check_schrodinger_gauge,
    gauge_potential,
)
from .intertwine import (
    IntertwinerBundle,
    build_axis,
    build_bundle,
    build_deformed,
    build_dihedral,
    combine_bundles,
    deformed_zeta,
    root_orbits,
)
from .media import (
    AxisMedium,
    DeformedMedium,
    DihedralMedium,
    Medium,
    MediumSpec,
    parse_medium,
)
from .search import SearchHit, SearchResult, search_deformed

__all__ = [
    "AxisMedium",
    "DeformedMedium",
    "DihedralMedium",
    "IntertwinerBundle",
    "Medium",
    "MediumSpec",
    "MonomialResidual",
    "ResidualReport",
    "SearchHit",
    "SearchResult",
    "build_axis",
    "build_bundle",
    "build_deformed",
    "build_dihedral",
    "check_intertwining",
    "check_schrodinger_gauge",
    "combine_bundles",
    "deformed_zeta",
    "gauge_potential",
    "parse_medium",
    "root_orbits",
    "search_deformed",
]
