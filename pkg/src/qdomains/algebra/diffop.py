"""Normal-ordered differential operators with polynomial coefficients.

``DiffOp2`` represents ``Σ p_ab(z, z̄) ∂z^a ∂z̄^b`` with every coefficient to
the left of every derivative. Composition is expanded with the Leibniz rule,
so products stay in canonical form.
"""

from __future__ import annotations

from collections.abc import Mapping
from math import comb

from sympy.polys.domains import QQ_I

from .field import ONE, GaussRat, I
from .poly2 import POLY2, RHO2, X, Z, ZB, Poly2, conjugate, d_z, d_zb, normalize_leading


def _derivative(p: Poly2, i: int, j: int) -> Poly2:
    return d_zb(d_z(p, i), j)


class DiffOp2:
    """Immutable operator ``Σ p_ab ∂z^a ∂z̄^b``.

    Parameters
    ----------
    terms : mapping of (a, b) to Poly2
        Coefficient of ``∂z^a ∂z̄^b``. Zero coefficients are dropped.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Poly2] | None = None):
        self._terms = {
            (int(a), int(b)): p for (a, b), p in (terms or {}).items() if p
        }

    # Constructors ---------------------------------------------------------

    @classmethod
    def identity(cls) -> DiffOp2:
        return cls({(0, 0): POLY2.one})

    @classmethod
    def multiplication(cls, p: Poly2) -> DiffOp2:
        return cls({(0, 0): p})

    @classmethod
    def d_z(cls) -> DiffOp2:
        return cls({(1, 0): POLY2.one})

    @classmethod
    def d_zb(cls) -> DiffOp2:
        return cls({(0, 1): POLY2.one})

    @classmethod
    def d_x(cls) -> DiffOp2:
        return cls({(1, 0): POLY2.one, (0, 1): POLY2.one})

    @classmethod
    def d_y(cls) -> DiffOp2:
        return cls({(1, 0): POLY2(I), (0, 1): POLY2(-I)})

    @classmethod
    def laplacian(cls) -> DiffOp2:
        return cls({(1, 1): POLY2(QQ_I(4, 0))})

    @classmethod
    def d_theta(cls) -> DiffOp2:
        """Angular derivative ``i(z∂z − z̄∂z̄)``."""
        return cls({(1, 0): Z * I, (0, 1): ZB * (-I)})

    @classmethod
    def euler_x(cls) -> DiffOp2:
        """``x∂x``."""
        return cls({(1, 0): X, (0, 1): X})

    # Views ----------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], Poly2]:
        return dict(self._terms)

    def coefficient(self, a: int, b: int) -> Poly2:
        return self._terms.get((a, b), POLY2.zero)

    @property
    def order(self) -> int:
        """Largest ``a+b`` present; ``-1`` for the zero operator."""
        return max((a + b for a, b in self._terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, int], Poly2]]:
        return sorted(
            self._terms.items(), key=lambda item: (sum(item[0]), item[0][0]), reverse=True
        )

    def to_config(self) -> list[dict]:
        from ..serialize import operator_to_terms

        return operator_to_terms(self)

    # Algebra --------------------------------------------------------------

    def __add__(self, other: DiffOp2) -> DiffOp2:
        if not isinstance(other, DiffOp2):
            return NotImplemented
        out = dict(self._terms)
        for key, p in other._terms.items():
            out[key] = out.get(key, POLY2.zero) + p
        return DiffOp2(out)

    def __neg__(self) -> DiffOp2:
        return DiffOp2({k: -p for k, p in self._terms.items()})

    def __sub__(self, other: DiffOp2) -> DiffOp2:
        if not isinstance(other, DiffOp2):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> DiffOp2:
        """Left multiplication by a scalar or polynomial: ``c·A``."""
        if isinstance(other, DiffOp2):
            return compose(self, other)
        return DiffOp2({k: p * other for k, p in self._terms.items()})

    def __rmul__(self, other) -> DiffOp2:
        return DiffOp2({k: other * p for k, p in self._terms.items()})

    def __matmul__(self, other: DiffOp2) -> DiffOp2:
        return compose(self, other)

    def __pow__(self, n: int) -> DiffOp2:
        result = DiffOp2.identity()
        for _ in range(n):
            result = compose(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple((k, tuple(sorted(p.items()))) for k, p in self.sorted_terms()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        body = " + ".join(
            f"({p.as_expr()})*Dz**{a}*Dzb**{b}" for (a, b), p in self.sorted_terms()
        )
        return f"DiffOp2({body or '0'})"

    def apply(self, f: Poly2) -> Poly2:
        """``Σ p_ab ∂z^a ∂z̄^b f``."""
        total = POLY2.zero
        for (a, b), p in self._terms.items():
            derived = _derivative(f, a, b)
            if derived:
                total += p * derived
        return total

    def conjugate(self) -> DiffOp2:
        """Operator acting as ``f ↦ conj(A[conj f])``."""
        return DiffOp2({(b, a): conjugate(p) for (a, b), p in self._terms.items()})

    def normalized(self) -> DiffOp2:
        """Scale so the pure ``∂z^order`` coefficient has leading coefficient one."""
        lead = self.coefficient(self.order, 0)
        if not lead:
            raise ValueError(f"{self!r} has no pure ∂z^{self.order} term to normalize on.")
        scale = ONE / lead.LC
        return DiffOp2({k: p * scale for k, p in self._terms.items()})


def compose(A: DiffOp2, B: DiffOp2) -> DiffOp2:
    """Normal-ordered product ``A∘B`` by the Leibniz rule.

    ``p ∂z^a ∂z̄^b ∘ q ∂z^c ∂z̄^d =
    Σ_{i≤a, j≤b} C(a,i) C(b,j) p (∂z^i ∂z̄^j q) ∂z^{a−i+c} ∂z̄^{b−j+d}``
    """
    out: dict[tuple[int, int], Poly2] = {}
    for (a, b), p in A._terms.items():
        for (c, d), q in B._terms.items():
            for i in range(a + 1):
                for j in range(b + 1):
                    dq = _derivative(q, i, j)
                    if not dq:
                        continue
                    key = (a - i + c, b - j + d)
                    term = p * dq * QQ_I(comb(a, i) * comb(b, j), 0)
                    out[key] = out.get(key, POLY2.zero) + term
    return DiffOp2(out)


def apply_to_analytic(
    op: DiffOp2, max_order: int | None = None, z1: GaussRat | None = None
) -> list[Poly2]:
    """Coefficients ``B_a`` with ``op[f] = Σ_a B_a f^{(a)}`` for analytic ``f``.

    Only the pure ``∂z^a`` columns act on analytic inputs. ``z1`` is accepted
    for call-site symmetry with base-point aware helpers; the coefficients
    themselves do not depend on it.
    """
    top = max((a for a, b in op.terms if b == 0), default=-1)
    if max_order is not None:
        top = max(top, max_order)
    return [op.coefficient(a, 0) for a in range(top + 1)]


def cleared_conjugated_laplacian(zeta: Poly2) -> DiffOp2:
    """``ζΔ − 2∇ζ·∇ = 4ζ∂z∂z̄ − 4ζ_z̄ ∂z − 4ζ_z ∂z̄``."""
    four = QQ_I(4, 0)
    return DiffOp2(
        {
            (1, 1): zeta * four,
            (1, 0): -(d_zb(zeta) * four),
            (0, 1): -(d_z(zeta) * four),
        }
    )


def gradient_dot(a: Poly2, b: Poly2) -> Poly2:
    """``∇a·∇b = 2(a_z b_z̄ + a_z̄ b_z)``."""
    return (d_z(a) * d_zb(b) + d_zb(a) * d_z(b)) * QQ_I(2, 0)


__all__ = [
    "DiffOp2",
    "RHO2",
    "apply_to_analytic",
    "cleared_conjugated_laplacian",
    "compose",
    "gradient_dot",
    "normalize_leading",
]
