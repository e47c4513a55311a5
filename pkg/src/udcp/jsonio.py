"""JSON output with a schema tag and every float written at 17 significant digits."""

from __future__ import annotations

import json
import math
from decimal import Decimal
from fractions import Fraction

SCHEMA_VERSION = 1


def _float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        # Not valid JSON numbers; keep them readable and parseable by Python's json.
        return "NaN" if math.isnan(x) else ("Infinity" if x > 0 else "-Infinity")
    text = format(x, ".17g")
    if all(c in "-0123456789" for c in text):
        text += ".0"
    return text


def _encode(obj, indent: int | None, level: int) -> str:
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, (Decimal, Fraction)):
        return _float(float(obj))
    if hasattr(obj, "item") and callable(obj.item):  # numpy scalars
        return _encode(obj.item(), indent, level)
    if hasattr(obj, "to_json"):
        return _encode(obj.to_json(), indent, level)
    if isinstance(obj, dict):
        items = [(json.dumps(str(k)), _encode(v, indent, level + 1)) for k, v in obj.items()]
        if not items:
            return "{}"
        if indent is None:
            return "{" + ", ".join(f"{k}: {v}" for k, v in items) + "}"
        pad, inner = " " * (indent * level), " " * (indent * (level + 1))
        return "{\n" + ",\n".join(f"{inner}{k}: {v}" for k, v in items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)) or hasattr(obj, "tolist"):
        seq = obj.tolist() if hasattr(obj, "tolist") else obj
        parts = [_encode(v, indent, level + 1) for v in seq]
        return "[" + ", ".join(parts) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int | None = None) -> str:
    return _encode(obj, indent, 0)


def document(payload: dict) -> dict:
    """Prefix ``payload`` with the schema version."""
    return {"schema": SCHEMA_VERSION, **payload}
