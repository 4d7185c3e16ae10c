"""Machine-readable result records and their JSON / CSV / text renderings."""
from __future__ import annotations

import csv
import io
import json
import time
from fractions import Fraction

from . import __version__

SCHEMA_VERSION = 1


def plain(value):
    """Recursively convert to JSON-safe values; Fractions become "p/q" strings."""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        seq = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [plain(v) for v in seq]
    if hasattr(value, "item") and callable(value.item):   # numpy scalars
        return value.item()
    return value


def record(quantity: str, inputs: dict, mode: str, seed, values: dict,
           runtime: float | None, deterministic: bool) -> dict:
    rec = {
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "quantity": quantity,
        "inputs": plain(inputs),
        "mode": mode,
        "seed": seed,
        "values": plain(values),
    }
    if not deterministic:
        rec["runtime_s"] = round(runtime, 6) if runtime is not None else None
        rec["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return rec


def _flatten(prefix: str, value, out: list):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(value) if isinstance(value, list) else value))


def render(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, indent=2, sort_keys=True) + "\n"
    rows: list = []
    _flatten("", rec["values"], rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "mode", "seed", "field", "value"])
        for field, value in rows:
            w.writerow([rec["quantity"], rec["mode"], rec["seed"], field, value])
        return buf.getvalue()
    head = f"{rec['quantity']} ({rec['mode']}"
    head += f", seed {rec['seed']})" if rec["seed"] is not None else ")"
    lines = [head] + [f"  {field}: {value}" for field, value in rows]
    if "runtime_s" in rec:
        lines.append(f"  runtime: {rec['runtime_s']:.3f}s")
    return "\n".join(lines) + "\n"
