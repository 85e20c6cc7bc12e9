"""Exhaustive search for Wronskian-ratio media with polynomial ζ."""

from __future__ import annotations

import logging
from itertools import combinations, product
from typing import Literal

from pydantic import Field

from .._types import PolyLike
from ..algebra.poly2 import Poly2, proportional
from ..base import BaseSchema
from ..errors import NotPolynomial
from .intertwine import build_deformed, deformed_zeta
from .media import DeformedMedium

logger = logging.getLogger(__name__)

PhaseGrid = Literal["mod2", "full"]


class SearchHit(BaseSchema):
    """One accepted configuration."""

    _emit_type = False

    medium: DeformedMedium
    zeta: PolyLike


class SearchResult(BaseSchema):
    """All hits plus the size of the space that was searched.

    ``exhausted`` is True when a target was given and nothing matched it.
    """

    _emit_type = False

    max_n: int
    max_k: int
    phase_grid: PhaseGrid
    examined: int = Field(..., description="Candidate (kseq, phases) pairs evaluated.")
    hits: list[SearchHit] = Field(default_factory=list)
    exhausted: bool = False


def search_deformed(
    max_n: int,
    max_k: int,
    phase_grid: PhaseGrid = "mod2",
    target: Poly2 | None = None,
) -> SearchResult:
    """Enumerate ``0 ≤ k_1 < .. < k_n ≤ max_k`` and phases on the π/2 grid.

    With ``phase_grid="mod2"`` only phases 0 and 1 are tried, since shifting a
    phase by 2 flips the sign of one sine and only rescales ζ. Each candidate's
    ζ is built first; with a ``target`` only candidates whose ζ is proportional
    to it go on to have their operator built.

    The cost is ``O(len(grid)^n · C(max_k + 1, n))`` Wronskian evaluations.
    """
    phases_per_sine = range(2) if phase_grid == "mod2" else range(4)
    hits: list[SearchHit] = []
    examined = 0
    for n in range(1, max_n + 1):
        for kseq in combinations(range(max_k + 1), n):
            for phases in product(phases_per_sine, repeat=n):
                examined += 1
                try:
                    zeta = deformed_zeta(list(kseq), list(phases))
                except NotPolynomial as err:
                    logger.debug("Rejected %s/%s: %s", kseq, phases, err)
                    continue
                if target is not None and not proportional(zeta, target):
                    continue
                try:
                    bundle = build_deformed(list(kseq), list(phases))
                except NotPolynomial as err:
                    logger.debug("Operator for %s/%s rejected: %s", kseq, phases, err)
                    continue
                hits.append(SearchHit(medium=bundle.medium, zeta=bundle.zeta))
    logger.info("Searched %d candidates, %d accepted", examined, len(hits))
    return SearchResult(
        max_n=max_n,
        max_k=max_k,
        phase_grid=phase_grid,
        examined=examined,
        hits=hits,
        exhausted=target is not None and not hits,
    )


__all__ = ["SearchHit", "SearchResult", "search_deformed"]
