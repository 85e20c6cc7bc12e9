"""Canonical wire format for exact values.

Every artifact the command line writes goes through this module, so equal
in-memory values always serialize to identical JSON:

- a real rational is the string ``"p"`` or ``"p/q"``;
- a Gaussian rational is the pair ``["re", "im"]``;
- a ``Poly2`` is a list of ``[a, b, "re", "im"]`` rows, one per term
  ``c·z**a·z̄**b``, in graded-lexicographic descending order;
- a ``DiffOp2`` is a list of ``{"d": [a, b], "coeff": <Poly2 rows>}``
  entries in the same order.

Parsing accepts exactly what serialization emits, plus floats and plain
integers wherever a rational is expected.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

from sympy.polys.rings import PolyElement

from .algebra.field import GaussRat, Rat, as_gaussrat, rational
from .algebra.poly2 import POLY2, Poly2, sorted_terms


def format_rational(value: Rat) -> str:
    value = rational(value)
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_gaussrat(value: GaussRat) -> list[str]:
    value = as_gaussrat(value)
    return [format_rational(value.x), format_rational(value.y)]


def is_exact_real(value: Any) -> bool:
    return isinstance(value, Rat)


def is_exact_complex(value: Any) -> bool:
    return isinstance(value, GaussRat)


def poly_to_terms(p: Poly2) -> list[list]:
    return [[a, b, *format_gaussrat(c)] for (a, b), c in sorted_terms(p)]


def poly_from_terms(terms: Iterable[Sequence]) -> Poly2:
    """Inverse of :func:`poly_to_terms`.

    Rows may also be ``[a, b, c]`` with a real coefficient. Repeated
    ``(a, b)`` keys are summed.
    """
    out: dict[tuple[int, int], GaussRat] = {}
    for row in terms:
        if len(row) == 4:
            a, b, re, im = row
            coeff = as_gaussrat([re, im])
        elif len(row) == 3:
            a, b, c = row
            coeff = as_gaussrat(c)
        else:
            raise ValueError(
                f"Polynomial term {row!r} must be [a, b, re, im] or [a, b, c]."
            )
        a, b = int(a), int(b)
        if a < 0 or b < 0:
            raise ValueError(f"Polynomial term {row!r} has a negative exponent.")
        out[(a, b)] = out.get((a, b), POLY2.domain.zero) + coeff
    return POLY2.from_dict({k: c for k, c in out.items() if c})


def operator_to_terms(op) -> list[dict]:
    return [
        {"d": [a, b], "coeff": poly_to_terms(p)} for (a, b), p in op.sorted_terms()
    ]


def operator_from_terms(terms: Iterable[dict]):
    """Inverse of :func:`operator_to_terms`."""
    from .algebra.diffop import DiffOp2

    out = {}
    for entry in terms:
        try:
            a, b = entry["d"]
            coeff = poly_from_terms(entry["coeff"])
        except (KeyError, TypeError) as err:
            raise ValueError(
                f"Operator term {entry!r} must look like "
                "{'d': [a, b], 'coeff': [[a, b, re, im], ...]}."
            ) from err
        key = (int(a), int(b))
        out[key] = out.get(key, POLY2.zero) + coeff
    return DiffOp2(out)


def serialize_exact(value: Any) -> Any:
    """Serialize an exact scalar or polynomial; anything else is a TypeError."""
    if is_exact_real(value):
        return format_rational(value)
    if is_exact_complex(value):
        return format_gaussrat(value)
    if isinstance(value, PolyElement) and value.ring == POLY2:
        return poly_to_terms(value)
    raise TypeError(f"Cannot serialize {value!r} of type {type(value).__name__}.")
