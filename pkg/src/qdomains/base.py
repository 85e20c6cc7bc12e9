"""Base classes for qdomains schemas."""

from typing import Any, NoReturn

from pydantic import BaseModel, ConfigDict
from sympy.polys.rings import PolyElement

from .serialize import is_exact_complex, is_exact_real, serialize_exact


def _serialize_value(value):
    """Recursively serialize a value, calling to_config on schemas."""
    if value is None:
        return None
    if isinstance(value, BaseSchema):
        return value.to_config()
    # sympy polynomials are dict subclasses keyed by exponent tuples
    if isinstance(value, PolyElement):
        return serialize_exact(value)
    if isinstance(value, dict):
        return {k: _serialize_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_serialize_value(v) for v in value]
    # bool is an int subclass; check before the exact scalar branches
    if isinstance(value, (bool, int, float, str)):
        return value
    if is_exact_real(value) or is_exact_complex(value):
        return serialize_exact(value)
    if hasattr(value, "to_config"):
        return value.to_config()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "tolist"):  # numpy arrays and scalars
        return _serialize_value(value.tolist())
    return serialize_exact(value)


def reject_runtime_object(value: Any, field_name: str, expected: str) -> NoReturn:
    """Reject a value that is neither a config form nor a schema instance.

    Parameters
    ----------
    value : Any
        The rejected value, echoed into the error message via ``repr``.
    field_name : str
        The schema field being resolved (e.g. ``"medium"``).
    expected : str
        User-facing description of the accepted non-dict forms, phrased with
        its article (e.g. ``"a medium string like 'axis:1'"``).

    Raises
    ------
    ValueError
        Always.
    """
    raise ValueError(
        f"Invalid {field_name} {value!r}: expected a config dict or {expected}; "
        f"got {type(value).__name__}."
    )


class BaseSchema(BaseModel):
    """Shared parent of every schema class in this package.

    It provides ``.to_config()``, the JSON-shaped form every command-line
    artifact is written in, and rejects unknown fields so typos in scenario
    files fail at load time instead of being silently ignored.

    ``.to_config()`` is the only supported serializer. Pydantic's
    ``.model_dump()`` leaves exact rationals, polynomials and operators as
    live objects, which are not JSON.
    """

    model_config = ConfigDict(
        extra="forbid",
        validate_assignment=True,
        arbitrary_types_allowed=True,
        populate_by_name=True,
    )

    # Fields to exclude from serialization
    _exclude_fields: set = set()
    # When False, to_config omits the "type" discriminator. Value objects that
    # must re-parse through ``model_validate`` set this.
    _emit_type: bool = True

    def to_config(self) -> dict:
        """Build the JSON-ready dict for this object.

        Nested schemas are converted recursively, exact scalars become
        ``"p/q"`` strings (or ``["re", "im"]`` pairs), polynomials and
        operators become term lists, and ``None`` fields are dropped. A
        ``"type"`` key naming the class is appended unless the class opts out.
        """
        config = {}
        # Declared fields come out in declaration order, so output is stable.
        for key, value in self:
            if value is None:
                continue
            if key in self._exclude_fields:
                continue
            field = type(self).model_fields.get(key)
            output_key = (
                (field.serialization_alias or field.alias or key) if field else key
            )
            config[output_key] = _serialize_value(value)
        if self._emit_type:
            config["type"] = self.__class__.__name__
        return config
