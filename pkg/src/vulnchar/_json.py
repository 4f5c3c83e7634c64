"""Canonical JSON output: sorted keys, 17-significant-digit floats.

17 significant digits round-trip any binary64 value exactly, so documents
written here reload bit-identically; fixed key order makes equal inputs
produce byte-equal files.
"""

from __future__ import annotations

import json


def _format_float(value: float) -> str:
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"cannot serialize non-finite float {value!r}")
    text = format(value, ".17g")
    if not any(c in text for c in ".eE"):
        text += ".0"  # keep the value a float on reload
    return text


def _write(obj, parts: list[str], indent: str) -> None:
    if obj is None or obj is True or obj is False:
        parts.append("null" if obj is None else "true" if obj else "false")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, float):
        parts.append(_format_float(obj))
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, (list, tuple)):
        if not obj:
            parts.append("[]")
            return
        inner = indent + "  "
        parts.append("[\n")
        for i, item in enumerate(obj):
            parts.append(inner)
            _write(item, parts, inner)
            parts.append(",\n" if i + 1 < len(obj) else "\n")
        parts.append(indent + "]")
    elif isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        inner = indent + "  "
        parts.append("{\n")
        keys = sorted(obj)
        for i, key in enumerate(keys):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            parts.append(inner + json.dumps(key, ensure_ascii=False) + ": ")
            _write(obj[key], parts, inner)
            parts.append(",\n" if i + 1 < len(keys) else "\n")
        parts.append(indent + "}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def canonical_json(obj) -> str:
    parts: list[str] = []
    _write(obj, parts, "")
    parts.append("\n")
    return "".join(parts)
