"""Shared type aliases for ``qdomains`` field annotations.

The exact scalar aliases validate with the coercions from
:mod:`qdomains.algebra.field`, so a schema field typed ``ExactReal`` accepts
``"3/4"``, ``3``, ``0.75`` (rationalized) or an existing ``QQ`` element and
always stores the ``QQ`` element.
"""

from __future__ import annotations

from typing import Annotated

from pydantic import BeforeValidator

from .algebra.diffop import DiffOp2
from .algebra.field import GaussRat, Rat, as_gaussrat, rational
from .algebra.poly2 import Poly2
from .serialize import operator_from_terms, poly_from_terms

ExactReal = Annotated[Rat, BeforeValidator(rational)]
"""Real rational; accepts ints, ``"p/q"`` strings, fractions and floats."""

ExactComplex = Annotated[GaussRat, BeforeValidator(as_gaussrat)]
"""Gaussian rational; additionally accepts ``[re, im]`` pairs and ``complex``."""


def _as_poly2(value):
    if isinstance(value, Poly2):
        return value
    return poly_from_terms(value)


PolyLike = Annotated[Poly2, BeforeValidator(_as_poly2)]
"""A ``Poly2`` or its term list ``[[a, b, re, im], ...]``."""


def _as_diffop(value):
    if isinstance(value, DiffOp2):
        return value
    return operator_from_terms(value)


OperatorLike = Annotated[DiffOp2, BeforeValidator(_as_diffop)]
"""A ``DiffOp2`` or its term list ``[{"d": [a, b], "coeff": [...]}, ...]``."""
