"""Schemas for permeability media.

A medium fixes the invariant polynomial ζ (the permeability is κ = 1/ζ²) and
the family of intertwining operators built for it. Media are written either as
config dicts discriminated on ``family`` or as compact strings:

- ``axis:n``
- ``dihedral:s,n,l``
- ``deformed:k1,k2,..:p1,p2,..`` with phases in units of π/2
"""

from __future__ import annotations

from typing import Annotated, Literal

from pydantic import Field, WrapValidator, field_validator, model_validator

from ..base import BaseSchema, reject_runtime_object


class Medium(BaseSchema):
    """Shared parent of the three medium families."""

    _emit_type = False

    def key(self) -> str:
        """Compact string form, e.g. ``"dihedral:1,2,1"``."""
        raise NotImplementedError

    @property
    def zeta_degree(self) -> int | None:
        """Total degree of ζ when known without building the bundle."""
        return None

    def __str__(self) -> str:
        return self.key()


class AxisMedium(Medium):
    """κ = x^(-2n): a single mirror line with multiplicity ``n``.

    Examples
    --------
    >>> AxisMedium(1).key()
    'axis:1'
    """

    family: Literal["axis"] = "axis"
    n: int = Field(..., ge=0, description="Multiplicity of the mirror x = 0.")

    def __init__(self, n=None, **kwargs):
        super().__init__(n=n, **kwargs)

    def key(self) -> str:
        return f"axis:{self.n}"

    @property
    def zeta_degree(self) -> int:
        return self.n


class DihedralMedium(Medium):
    """Dihedral arrangement of 2s mirror lines.

    The lines ``Re z^s = 0`` carry multiplicity ``n`` and the lines
    ``Im z^s = 0`` carry multiplicity ``l``, so
    ζ ∝ (z^s + z̄^s)^n (z^s − z̄^s)^l.
    """

    family: Literal["dihedral"] = "dihedral"
    s: int = Field(..., ge=1, description="Rotational order of the arrangement.")
    n: int = Field(..., ge=1, description="Multiplicity of the lines Re z^s = 0.")
    l: int = Field(default=0, ge=0, description="Multiplicity of the lines Im z^s = 0.")

    def __init__(self, s=None, n=None, l=0, **kwargs):  # noqa: E741
        super().__init__(s=s, n=n, l=l, **kwargs)

    @model_validator(mode="after")
    def _check_multiplicities(self):
        if not self.n > self.l:
            raise ValueError(
                f"Dihedral medium needs n > l >= 0; got n={self.n}, l={self.l}."
            )
        return self

    def key(self) -> str:
        return f"dihedral:{self.s},{self.n},{self.l}"

    @property
    def zeta_degree(self) -> int:
        return self.s * (self.n + self.l)

    def angular_multipliers(self) -> list[int]:
        """``m_k`` with θ_k = m_k(sθ + π/2)."""
        n, l = self.n, self.l
        return [k if k <= n - l else 2 * k + l - n for k in range(1, n + 1)]

    def as_deformed(self) -> DeformedMedium:
        """The same Wronskian data written as a deformed sequence."""
        ms = self.angular_multipliers()
        return DeformedMedium(kseq=[m * self.s for m in ms], phases=[m % 4 for m in ms])


class DeformedMedium(Medium):
    """Wronskian-ratio medium with θ_j = k_j θ + phase_j·π/2."""

    family: Literal["deformed"] = "deformed"
    kseq: list[int] = Field(
        ...,
        min_length=1,
        description="Strictly increasing non-negative angular frequencies k_j.",
    )
    phases: list[int] = Field(
        ...,
        description="Phase of each sine in units of π/2; stored reduced mod 4.",
    )

    @field_validator("kseq")
    @classmethod
    def _check_increasing(cls, kseq):
        if kseq[0] < 0 or any(b <= a for a, b in zip(kseq, kseq[1:])):
            raise ValueError(
                f"kseq must be non-negative and strictly increasing; got {kseq}."
            )
        return kseq

    @field_validator("phases")
    @classmethod
    def _reduce_phases(cls, phases):
        return [int(p) % 4 for p in phases]

    @model_validator(mode="after")
    def _check_lengths(self):
        if len(self.phases) != len(self.kseq):
            raise ValueError(
                f"Need one phase per frequency; got {len(self.kseq)} frequencies "
                f"and {len(self.phases)} phases."
            )
        return self

    def key(self) -> str:
        ks = ",".join(str(k) for k in self.kseq)
        ps = ",".join(str(p) for p in self.phases)
        return f"deformed:{ks}:{ps}"


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise ValueError(f"Expected comma-separated integers for {what}; got {text!r}.") from err


def parse_medium(text: str) -> Medium:
    """Parse a compact medium string.

    Raises
    ------
    ValueError
        If the family is unknown or the parameters are malformed.
    """
    family, _, rest = text.strip().partition(":")
    family = family.lower()
    if family == "axis":
        values = _ints(rest, "axis:n")
        if len(values) != 1:
            raise ValueError(f"Medium {text!r} must look like 'axis:n'.")
        return AxisMedium(values[0])
    if family == "dihedral":
        values = _ints(rest, "dihedral:s,n,l")
        if len(values) not in (2, 3):
            raise ValueError(f"Medium {text!r} must look like 'dihedral:s,n,l'.")
        return DihedralMedium(*values)
    if family == "deformed":
        ks, sep, ps = rest.partition(":")
        if not sep:
            raise ValueError(
                f"Medium {text!r} must look like 'deformed:k1,k2,..:p1,p2,..'."
            )
        return DeformedMedium(kseq=_ints(ks, "kseq"), phases=_ints(ps, "phases"))
    raise ValueError(
        f"Unknown medium family {family!r} in {text!r}; expected axis, dihedral or deformed."
    )


def _resolve_medium(value, handler):
    """Validate one medium: a compact string, a config dict or an instance."""
    if isinstance(value, str):
        return parse_medium(value)
    if isinstance(value, (dict, Medium)):
        return handler(value)
    reject_runtime_object(value, "medium", "a medium string like 'axis:1'")


MediumSpec = Annotated[
    Annotated[
        AxisMedium | DihedralMedium | DeformedMedium,
        Field(discriminator="family"),
    ],
    WrapValidator(_resolve_medium),
]
"""Any medium, discriminated on ``family``; compact strings are accepted."""
