"""Deterministic text serialization: JSON and CSV with 17-digit floats.

The verification pipeline promises byte-identical artifacts for identical
inputs, so floats are always rendered with the same %.17g rule instead of
whatever repr the runtime picks.
"""

from __future__ import annotations

import numpy as np


def format_float(x: float) -> str:
    x = float(x)
    if np.isnan(x) or np.isinf(x):
        raise ValueError("non-finite value in a serialized artifact")
    return f"{x:.17g}"


def dumps(obj, indent: int = 0) -> str:
    """JSON text with deterministic float formatting and key order as given."""
    pad = "  " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        out = out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
        return f'"{out}"'
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = [dumps(v, indent + 1) for v in obj]
        if not items:
            return "[]"
        inner = ",\n".join("  " * (indent + 1) + s for s in items)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, dict):
        items = [
            f'{"  " * (indent + 1)}{dumps(str(k))}: {dumps(v, indent + 1)}'
            for k, v in obj.items()
        ]
        if not items:
            return "{}"
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_json(path, obj) -> None:
    with open(path, "w") as handle:
        handle.write(dumps(obj))
        handle.write("\n")


def write_csv(path, header: str, rows: np.ndarray) -> None:
    rows = np.asarray(rows)
    lines = [header]
    for row in rows:
        lines.append(",".join(format_float(v) for v in row))
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)
