"""Shared helpers: exact falling factorials and Wilson intervals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist

Z95 = NormalDist().inv_cdf(0.975)


def falling(n: int, k: int) -> int:
    return math.perm(n, k)


@dataclass(frozen=True)
class Estimate:
    """Binomial proportion estimate with a 95% Wilson score interval."""

    hits: int
    samples: int
    seed: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.hits, self.samples)

    @property
    def ci(self) -> tuple[float, float]:
        return wilson(self.hits, self.samples)

    def contains(self, x) -> bool:
        lo, hi = self.ci
        return lo <= float(x) <= hi


def wilson(hits: int, samples: int, z: float = Z95) -> tuple[float, float]:
    if samples <= 0:
        raise ValueError("no samples")
    p = hits / samples
    denom = 1 + z * z / samples
    centre = (p + z * z / (2 * samples)) / denom
    half = z * math.sqrt(p * (1 - p) / samples + z * z / (4 * samples * samples)) / denom
    lo = 0.0 if hits == 0 else max(0.0, centre - half)
    hi = 1.0 if hits == samples else min(1.0, centre + half)
    return lo, hi
