"""Deterministic serialization helpers shared by the table/report modules.

Floats are rendered with ``%.17g`` (17 significant digits, round-trip
exact), so identical inputs always produce byte-identical JSON and CSV.
"""

from __future__ import annotations

import json
import math


def format_float(x: float) -> str:
    """Render a finite float with 17 significant digits."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite float in output: {x!r}")
    return "%.17g" % x


def dumps(obj, indent: int | None = None) -> str:
    """JSON-encode dicts/lists/scalars with %.17g float rendering."""
    out: list[str] = []
    _emit(obj, out, indent, 0)
    return "".join(out)


def _emit(obj, out: list[str], indent: int | None, depth: int) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        _emit_seq(
            [(json.dumps(str(k)) + ": ", v) for k, v in obj.items()],
            "{", "}", out, indent, depth,
        )
    elif isinstance(obj, (list, tuple)):
        _emit_seq([("", v) for v in obj], "[", "]", out, indent, depth)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def _emit_seq(items, open_ch: str, close_ch: str, out: list[str],
              indent: int | None, depth: int) -> None:
    if not items:
        out.append(open_ch + close_ch)
        return
    if indent is None:
        out.append(open_ch)
        first = True
        for prefix, value in items:
            if not first:
                out.append(", ")
            first = False
            out.append(prefix)
            _emit(value, out, indent, depth)
        out.append(close_ch)
        return
    pad = " " * (indent * (depth + 1))
    out.append(open_ch + "\n")
    first = True
    for prefix, value in items:
        if not first:
            out.append(",\n")
        first = False
        out.append(pad + prefix)
        _emit(value, out, indent, depth + 1)
    out.append("\n" + " " * (indent * depth) + close_ch)
