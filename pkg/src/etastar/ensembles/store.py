"""JSON-backed store of exact statistics, keyed by (quantity, n, k, mode, seed).

Non-integral Fractions are stored as "p/q" strings so that nothing is rounded. The file
carries the library version; a store written by another version is dropped
on load rather than trusted.
"""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .. import __version__
from ..reports import plain

STORE_FILE = "stats.json"
CSV_COLUMNS = ("quantity", "n", "k", "mode", "seed", "value")


def encode(value):
    """Same JSON-safe form as the CLI reports, so cached and fresh runs print identically."""
    return plain(value)


def decode_fraction(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class Key:
    quantity: str
    n: int
    k: int | None = None
    mode: str = "exact"
    seed: int | None = None

    def text(self) -> str:
        return "|".join(str(x) for x in (self.quantity, self.n, self.k, self.mode, self.seed))


class StatsStore:
    def __init__(self, root: str | Path, version: str = __version__):
        self.path = Path(root) / STORE_FILE
        self.version = version
        self._data: dict[str, dict] = {}
        if self.path.exists():
            try:
                raw = json.loads(self.path.read_text())
            except json.JSONDecodeError:
                raw = {}
            if raw.get("version") == version:
                self._data = raw.get("entries", {})

    def get(self, key: Key):
        entry = self._data.get(key.text())
        return None if entry is None else entry["value"]

    def put(self, key: Key, value) -> None:
        self._data[key.text()] = {"quantity": key.quantity, "n": key.n, "k": key.k,
                                  "mode": key.mode, "seed": key.seed, "value": encode(value)}

    def get_or_compute(self, key: Key, compute):
        hit = self.get(key)
        if hit is not None:
            return hit
        value = encode(compute())
        self.put(key, value)
        self.save()
        return value

    def save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"version": self.version, "entries": self._data},
                                  sort_keys=True, indent=1))
        os.replace(tmp, self.path)

    def __len__(self):
        return len(self._data)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for name in sorted(self._data):
            e = self._data[name]
            value = e["value"] if not isinstance(e["value"], (dict, list)) else json.dumps(e["value"], sort_keys=True)
            w.writerow([e["quantity"], e["n"], e["k"], e["mode"], e["seed"], value])
        return buf.getvalue()
