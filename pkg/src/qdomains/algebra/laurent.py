"""Laurent polynomials and the trigonometric ring used for Wronskians.

A :class:`LaurentPoly` is stored as ``num(w) · w**low`` with ``num`` an
ordinary polynomial whose constant term is nonzero, so exact division
reduces to polynomial division by a factor coprime to ``w``.

A :class:`TrigElem` is a Laurent polynomial in ``u = e^{iθ}`` carried
together with a power of ρ; ``ρ**k u**m`` is the polynomial
``z**((k+m)/2) z̄**((k−m)/2)`` whenever that exponent pair is admissible.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from typing import TypeVar

from sympy.polys.domains import QQ_I
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

from ..errors import NotDivisible, NotPolynomial
from .field import ONE, ZERO, GaussRat, I, conj, i_power
from .poly2 import POLY2, Poly2

_RING, _W = ring("w", QQ_I, lex)

E = TypeVar("E")


def _lowest_power(num) -> int:
    return min(e for (e,) in num.keys())


class LaurentPoly:
    """Immutable Laurent polynomial ``Σ c_k w**k`` over the Gaussian rationals."""

    __slots__ = ("_num", "_low")

    def __init__(self, num=None, low: int = 0):
        num = _RING.zero if num is None else num
        if not num:
            self._num, self._low = _RING.zero, 0
            return
        shift = _lowest_power(num)
        if shift:
            num = _RING.from_dict({(e - shift,): c for (e,), c in num.items()})
        self._num = num
        self._low = low + shift

    @classmethod
    def from_terms(cls, terms: Mapping[int, GaussRat]) -> LaurentPoly:
        terms = {k: c for k, c in terms.items() if c}
        if not terms:
            return cls()
        low = min(terms)
        return cls(_RING.from_dict({(k - low,): c for k, c in terms.items()}), low)

    @classmethod
    def monomial(cls, k: int, coeff: GaussRat = ONE) -> LaurentPoly:
        return cls.from_terms({k: coeff})

    @classmethod
    def constant(cls, coeff: GaussRat) -> LaurentPoly:
        return cls.from_terms({0: coeff})

    def terms(self) -> dict[int, GaussRat]:
        return {e + self._low: c for (e,), c in self._num.items()}

    def coefficient(self, k: int) -> GaussRat:
        return self._num.get((k - self._low,), ZERO)

    def residue(self) -> GaussRat:
        """Coefficient of ``w**-1``."""
        return self.coefficient(-1)

    @property
    def low(self) -> int:
        return self._low

    @property
    def high(self) -> int:
        return self._low + self._num.degree() if self._num else 0

    def conjugate_reciprocal(self) -> LaurentPoly:
        """``conj(l)(1/w)``: conjugate coefficients and reflect powers."""
        return LaurentPoly.from_terms({-k: conj(c) for k, c in self.terms().items()})

    def _aligned(self, other: LaurentPoly):
        low = min(self._low, other._low)
        a = self._num * _W ** (self._low - low) if self else self._num
        b = other._num * _W ** (other._low - low) if other else other._num
        return a, b, low

    def __add__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, low = self._aligned(other)
        return LaurentPoly(a + b, low)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(-self._num, self._low)

    def __sub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly(self._num * other._num, self._low + other._low)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._num) != 1:
                raise NotDivisible(f"{self} is not a unit of the Laurent ring.")
            ((e,), c), = self._num.items()
            return LaurentPoly.monomial((e + self._low) * n, (ONE / c) ** (-n))
        return LaurentPoly(self._num**n, self._low * n)

    def exact_divide(self, other: LaurentPoly) -> LaurentPoly:
        if not other:
            raise ZeroDivisionError("Division by the zero Laurent polynomial.")
        quotient, remainder = self._num.div(other._num)
        if remainder:
            raise NotDivisible(f"{other} does not divide {self}.")
        return LaurentPoly(quotient, self._low - other._low)

    def __bool__(self) -> bool:
        return bool(self._num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._low == other._low and self._num == other._num

    def __hash__(self) -> int:
        return hash((self._low, tuple(sorted(self.terms().items()))))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*w**{k}" for k, c in sorted(self.terms().items()))
        return f"LaurentPoly({body or '0'})"


def _coerce_laurent(value):
    if isinstance(value, LaurentPoly):
        return value
    try:
        return LaurentPoly.constant(QQ_I.convert(value))
    except Exception:
        return NotImplemented


def substitute(p: Poly2, z: LaurentPoly, zb: LaurentPoly) -> LaurentPoly:
    """Evaluate a Poly2 at Laurent polynomials ``z``, ``zb`` with cached powers."""
    total = LaurentPoly()
    if not p:
        return total
    amax = max(a for a, _ in p.keys())
    bmax = max(b for _, b in p.keys())
    zp = [LaurentPoly.constant(ONE)]
    for _ in range(amax):
        zp.append(zp[-1] * z)
    zbp = [LaurentPoly.constant(ONE)]
    for _ in range(bmax):
        zbp.append(zbp[-1] * zb)
    for (a, b), c in p.items():
        total = total + zp[a] * zbp[b] * c
    return total


def residue(l: LaurentPoly) -> GaussRat:
    return l.residue()


class TrigElem:
    """``ρ**rho_power · Σ c_m u**m`` with ``u = e^{iθ}``."""

    __slots__ = ("harmonics", "rho_power")

    def __init__(self, harmonics: LaurentPoly | None = None, rho_power: int = 0):
        self.harmonics = harmonics if harmonics is not None else LaurentPoly()
        self.rho_power = rho_power

    @classmethod
    def constant(cls, coeff: GaussRat) -> TrigElem:
        return cls(LaurentPoly.constant(coeff))

    @classmethod
    def sin(cls, k: int, phase: int = 0) -> TrigElem:
        """``sin(kθ + phase·π/2)`` expanded in ``u``."""
        half_i = ONE / (I * 2)
        return cls(
            LaurentPoly.monomial(k, i_power(phase) * half_i)
            - LaurentPoly.monomial(-k, i_power(-phase) * half_i)
        )

    @classmethod
    def cos(cls, k: int) -> TrigElem:
        return cls.sin(k, 1)

    @classmethod
    def rho(cls, k: int) -> TrigElem:
        return cls(LaurentPoly.constant(ONE), k)

    def terms(self) -> dict[int, GaussRat]:
        return self.harmonics.terms()

    def d_theta(self) -> TrigElem:
        """θ-derivative; ``∂θ u**m = i·m·u**m`` and ρ is constant along θ."""
        return TrigElem(
            LaurentPoly.from_terms({m: c * I * m for m, c in self.terms().items()}),
            self.rho_power,
        )

    def is_real(self) -> bool:
        terms = self.terms()
        return all(terms.get(-m, ZERO) == conj(c) for m, c in terms.items())

    def __bool__(self) -> bool:
        return bool(self.harmonics)

    def __add__(self, other):
        if not isinstance(other, TrigElem):
            return NotImplemented
        if not self:
            return other
        if not other:
            return self
        if self.rho_power != other.rho_power:
            raise ValueError(
                f"Cannot add trig elements with ρ powers {self.rho_power} and "
                f"{other.rho_power}."
            )
        return TrigElem(self.harmonics + other.harmonics, self.rho_power)

    def __neg__(self) -> TrigElem:
        return TrigElem(-self.harmonics, self.rho_power)

    def __sub__(self, other):
        if not isinstance(other, TrigElem):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TrigElem):
            return TrigElem(
                self.harmonics * other.harmonics, self.rho_power + other.rho_power
            )
        scaled = self.harmonics * other
        if scaled is NotImplemented:
            return NotImplemented
        return TrigElem(scaled, self.rho_power)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TrigElem:
        return TrigElem(self.harmonics**n, self.rho_power * n)

    def exact_divide(self, other: TrigElem) -> TrigElem:
        return TrigElem(
            self.harmonics.exact_divide(other.harmonics),
            self.rho_power - other.rho_power,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrigElem):
            return NotImplemented
        if not self and not other:
            return True
        return self.rho_power == other.rho_power and self.harmonics == other.harmonics

    def __hash__(self) -> int:
        return hash((self.rho_power, self.harmonics))

    def __repr__(self) -> str:
        return f"TrigElem(rho**{self.rho_power} * {self.harmonics!r})"

    def to_poly2(self) -> Poly2:
        """Convert ``ρ**k u**m`` terms to ``z**((k+m)/2) z̄**((k−m)/2)``.

        Raises
        ------
        NotPolynomial
            If some harmonic has ``|m| > k`` or the wrong parity.
        """
        k = self.rho_power
        out = {}
        for m, c in self.terms().items():
            if abs(m) > k or (k + m) % 2:
                raise NotPolynomial(
                    f"ρ**{k} u**{m} is not a polynomial in (z, z̄)."
                )
            out[((k + m) // 2, (k - m) // 2)] = c
        return POLY2.from_dict(out)


def determinant(matrix: Sequence[Sequence[E]], zero: E) -> E:
    """Laplace expansion along the first column, for small ring-valued matrices."""
    n = len(matrix)
    if n == 0:
        raise ValueError("Use the ring's one for the empty determinant.")
    if n == 1:
        return matrix[0][0]
    total = zero
    for i in range(n):
        entry = matrix[i][0]
        if not entry:
            continue
        minor = [row[1:] for r, row in enumerate(matrix) if r != i]
        term = entry * determinant(minor, zero)
        total = total + term if i % 2 == 0 else total - term
    return total


def derivative_table(
    fs: Sequence[TrigElem], columns: int, derive: Callable[[TrigElem], TrigElem]
) -> list[list[TrigElem]]:
    """Rows ``[f, f′, …, f^(columns−1)]`` for each input."""
    rows = []
    for f in fs:
        row = [f]
        for _ in range(columns - 1):
            row.append(derive(row[-1]))
        rows.append(row)
    return rows


def wronskian_theta(fs: Sequence[TrigElem]) -> TrigElem:
    """``det[∂θ^j f_i]``; the empty Wronskian is one."""
    if not fs:
        return TrigElem.constant(ONE)
    table = derivative_table(fs, len(fs), TrigElem.d_theta)
    return determinant(table, TrigElem())


def exact_divide(a, b):
    """Exact quotient of two TrigElems, LaurentPolys or Poly2s.

    Raises
    ------
    NotDivisible
        If ``b`` does not divide ``a`` in the ring.
    """
    if isinstance(a, (TrigElem, LaurentPoly)):
        return a.exact_divide(b)
    if not b:
        raise ZeroDivisionError("Division by the zero polynomial.")
    try:
        return a.exquo(b)
    except ExactQuotientFailed as err:
        raise NotDivisible(f"{b} does not divide {a}.") from err

