"""Deterministic JSON/CSV text formatting.

The CLI and the interpolant serializer promise byte-identical output for
identical inputs, so floats are always written with 17 significant digits
(enough for a lossless double round-trip) instead of whatever repr picks.
"""

from __future__ import annotations

import math
from typing import Any

FLOAT_DIGITS = 17
TABLE_DIGITS = 6


def format_float(x: float, digits: int = FLOAT_DIGITS) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("cannot serialize non-finite float %r" % x)
    text = "%.*g" % (digits, x)
    # keep JSON numbers recognizable as floats
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def dumps(obj: Any, indent: int = 0) -> str:
    """Serialize dict/list/str/int/float/bool/None with fixed float formatting."""
    pieces: list[str] = []
    _write(obj, pieces)
    return "".join(pieces)


def _write(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            if not isinstance(key, str):
                raise TypeError("JSON object keys must be strings")
            _write(key, out)
            out.append(": ")
            _write(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _write(value, out)
        out.append("]")
    else:
        raise TypeError("cannot serialize %r" % type(obj))


def csv_cell(value: Any) -> str:
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    text = str(value)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def csv_line(values) -> str:
    return ",".join(csv_cell(v) for v in values)


def table_cell(value: Any) -> str:
    if isinstance(value, float):
        return "%.*g" % (TABLE_DIGITS, value)
    return str(value)
