"""Exact scalar field: Gaussian rationals from sympy's ``QQ_I`` domain.

Real rationals are ``QQ`` elements (``mpq``), complex ones ``QQ_I`` elements
with rational ``.x``/``.y`` parts. ``QQ_I`` elements do not compare equal to
Python ints, so zero tests must use truthiness (``not g``).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction
from numbers import Integral

from sympy import Rational
from sympy.polys.domains import QQ, QQ_I

GaussRat = type(QQ_I.one)
Rat = QQ.dtype

ZERO = QQ_I.zero
ONE = QQ_I.one
I = QQ_I(0, 1)

#: Floats entering exact code are snapped to the nearest fraction with a
#: denominator no larger than this, an error of at most 1e-13.
RATIONALIZE_DENOMINATOR = 10**13


def rationalize(value: float) -> Rat:
    """Nearest rational to a float with denominator ≤ 10**13."""
    if not math.isfinite(value):
        raise ValueError(f"Cannot rationalize non-finite value {value!r}.")
    snapped = Rational(value).limit_denominator(RATIONALIZE_DENOMINATOR)
    return QQ(int(snapped.p), int(snapped.q))


def rational(value) -> Rat:
    """Coerce ``value`` to an exact real rational.

    Accepts ints, ``"p/q"`` or decimal strings, fractions, sympy rationals,
    ``QQ`` elements, real ``QQ_I`` elements and floats (rationalized).
    """
    if isinstance(value, Rat):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Expected a rational number; got bool {value!r}.")
    if isinstance(value, Integral):
        return QQ(int(value))
    if isinstance(value, GaussRat):
        if value.y:
            raise ValueError(f"Expected a real number; got complex {value}.")
        return value.x
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, float):
        return rationalize(value)
    if isinstance(value, str):
        try:
            parsed = Rational(value.strip())
        except (TypeError, ValueError, SyntaxError) as err:
            raise ValueError(
                f"Cannot parse {value!r} as a rational; expected 'p', 'p/q' or a decimal."
            ) from err
        return QQ(int(parsed.p), int(parsed.q))
    if isinstance(value, Rational):
        return QQ(int(value.p), int(value.q))
    raise ValueError(
        f"Cannot interpret {value!r} ({type(value).__name__}) as a rational number."
    )


def gaussrat(re=0, im=0) -> GaussRat:
    """Build ``re + i·im`` from anything :func:`rational` accepts."""
    return QQ_I(rational(re), rational(im))


def as_gaussrat(value) -> GaussRat:
    """Coerce ``value`` to a Gaussian rational.

    Accepts ``QQ_I`` elements, Python complex numbers (parts rationalized),
    ``[re, im]`` pairs and every real form of :func:`rational`.
    """
    if isinstance(value, GaussRat):
        return value
    if isinstance(value, complex):
        return QQ_I(rationalize(value.real), rationalize(value.imag))
    if isinstance(value, Sequence) and not isinstance(value, str):
        if len(value) != 2:
            raise ValueError(
                f"A complex value must be a [re, im] pair; got {len(value)} entries."
            )
        return gaussrat(value[0], value[1])
    return QQ_I(rational(value), 0)


def conj(value: GaussRat) -> GaussRat:
    return QQ_I(value.x, -value.y)


def is_real(value: GaussRat) -> bool:
    return not value.y


def to_complex(value: GaussRat) -> complex:
    return complex(float(value.x), float(value.y))


def i_power(k: int) -> GaussRat:
    """``i**k`` for any integer ``k``."""
    return (ONE, I, -ONE, -I)[k % 4]


def inverse_factorial(n: int) -> GaussRat:
    return QQ_I(QQ(1, math.factorial(n)), 0)
