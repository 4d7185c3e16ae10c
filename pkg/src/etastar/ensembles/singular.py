"""Singularity of random +-1 matrices: exact counts, raw brute force, Monte Carlo.

Exact counts use two symmetries. Flipping the sign of a row preserves
singularity, so every matrix is one of 2^n sign patterns of a matrix whose
rows all start with +1, i.e. whose rows lie in E_{n-1}. Row order does not
matter either, so it suffices to visit multisets of n rows of E_{n-1}; a
multiset with multiplicities m_j stands for n!/prod(m_j!) ordered row tuples.
Hence  #singular = 2^n * sum over singular multisets of n!/prod(m_j!).
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import BudgetExhausted, ConfigurationError
from ..parallel import map_shards
from ..projective import generate_En
from .batch import batch_singular
from .stats import Estimate, falling

EXACT_MAX_N = 6
RAW_MAX_N = 4
MC_SHARD = 1 << 18


def asym_scale(n: int) -> Fraction:
    """(n-1)^2 * 2^(1-n)."""
    return Fraction((n - 1) ** 2 * 2, 2**n)


@dataclass(frozen=True)
class SingularityReport:
    n: int
    mode: str
    singular_count: int | None
    total: int | None
    P: Fraction | None = None
    estimate: Estimate | None = None

    @property
    def value(self) -> Fraction:
        return self.P if self.P is not None else self.estimate.value

    @property
    def asym_ratio(self) -> Fraction | None:
        if self.n < 2:
            return None
        return self.value / asym_scale(self.n)

    @property
    def ci(self) -> tuple[float, float] | None:
        return None if self.estimate is None else self.estimate.ci


def _row_space(n: int) -> np.ndarray:
    if n == 1:
        return np.array([[1]], dtype=np.int64)
    return np.array(generate_En(n - 1).reps, dtype=np.int64)


def _multiset_weight(combo: tuple[int, ...]) -> int:
    w = math.factorial(len(combo))
    for c in Counter(combo).values():
        w //= math.factorial(c)
    return w


def _singular_weight(args) -> int:
    n, block = args
    rows = _row_space(n)
    idx = np.array(block, dtype=np.int64)
    sing = batch_singular(rows[idx])
    return sum(_multiset_weight(c) for c, s in zip(block, sing) if s)


def singular_exact(n: int, jobs: int = 1, chunk: int = 1 << 15) -> SingularityReport:
    """Exact number of singular n x n +-1 matrices, via the row symmetries above."""
    if n < 1:
        raise ConfigurationError("n must be positive")
    if n > EXACT_MAX_N:
        raise BudgetExhausted(f"exact enumeration limited to n <= {EXACT_MAX_N}")
    R = 2 ** (n - 1)
    combos = list(itertools.combinations_with_replacement(range(R), n))
    shards = [(n, combos[i:i + chunk]) for i in range(0, len(combos), chunk)]
    weighted = sum(map_shards(_singular_weight, shards, jobs))
    count = 2**n * weighted
    total = 2 ** (n * n)
    return SingularityReport(n, "exact", count, total, Fraction(count, total))


def singular_raw(n: int, chunk: int = 1 << 16) -> int:
    """Brute force over all 2^(n^2) +-1 matrices, no symmetry used."""
    if n > RAW_MAX_N:
        raise BudgetExhausted(f"raw enumeration limited to n <= {RAW_MAX_N}")
    total = 2 ** (n * n)
    count = 0
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = (codes[:, None] >> np.arange(n * n)) & 1
        mats = (1 - 2 * bits).reshape(-1, n, n)
        count += int(batch_singular(mats).sum())
    return count


def pm1_singular(mats: np.ndarray) -> np.ndarray:
    """Singularity of a stack of +-1 matrices, fast path.

    Subtracting the first row from the others leaves entries in {0, +-2}, so
    det is a multiple of 2^(n-1). A floating LU determinant below 2^(n-2) in
    magnitude is therefore exactly zero and one above 3*2^(n-3) is nonzero;
    anything in between (never observed) is settled by exact elimination.
    """
    n = mats.shape[1]
    d = np.abs(np.linalg.det(mats.astype(np.float64)))
    unit = 2.0 ** (n - 1)
    sing = d < unit / 2
    odd = (d >= unit / 4) & (d <= 3 * unit / 4)
    if odd.any():
        sing[odd] = batch_singular(mats[odd])
    return sing


def _mc_shard(args) -> int:
    n, size, seed_seq = args
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    mats = rng.integers(0, 2, size=(size, n, n), dtype=np.int64) * 2 - 1
    return int(pm1_singular(mats).sum())


def singular_mc(n: int, samples: int, seed: int, jobs: int = 1,
                shard: int = MC_SHARD) -> SingularityReport:
    """Monte Carlo estimate with a 95% Wilson interval.

    The sample stream is cut into fixed-size shards; shard i draws from
    ``SeedSequence(seed).spawn(...)[i]``, so results do not depend on ``jobs``.
    """
    if samples < 1:
        raise ConfigurationError("samples must be positive")
    sizes = [shard] * (samples // shard)
    if samples % shard:
        sizes.append(samples % shard)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    hits = sum(map_shards(_mc_shard, [(n, s, q) for s, q in zip(sizes, seqs)], jobs))
    return SingularityReport(n, "monte_carlo", hits, samples, None, Estimate(hits, samples, seed))


# -- decomposition into repeated rows and dependent distinct rows ---------------------

def repeat_rows_closed_form(n: int) -> int:
    """(n+1)-tuples over E_n with some row repeated: N^(n+1) - (N)_(n+1), N = 2^n."""
    N = 2**n
    return N ** (n + 1) - falling(N, n + 1)


def two_close_rows_count(n: int) -> int:
    """Repeated-row (n+1)-tuples over E_n, counted over row multisets."""
    if n > 5:
        raise BudgetExhausted("enumeration limited to n <= 5")
    N = 2**n
    return sum(_multiset_weight(c)
               for c in itertools.combinations_with_replacement(range(N), n + 1)
               if len(set(c)) < len(c))


def two_close_rows_bruteforce(n: int) -> int:
    N = 2**n
    if N ** (n + 1) > 10**7:
        raise BudgetExhausted("tuple product too large")
    return sum(1 for t in itertools.product(range(N), repeat=n + 1) if len(set(t)) < n + 1)


def repeat_fraction_leading(n: int) -> Fraction:
    """Leading behaviour n(n+1)/2^(n+1) of the repeated-row share; reported, not asserted."""
    return Fraction(n * (n + 1), 2 ** (n + 1))


@dataclass(frozen=True)
class DecompositionCheck:
    n: int
    singular_tuples: int      # singular (n+1)-tuples over E_n, from P_{n+1}
    repeat_tuples: int
    dependent_distinct: Fraction   # delta_{n,n+1} * (2^n)_{n+1}
    holds: bool


def check_decomposition(n: int, delta_n_n1: Fraction, singular: SingularityReport) -> DecompositionCheck:
    """P_{n+1} * 2^(n(n+1)) = #repeated-row tuples + delta_{n,n+1} * (2^n)_{n+1}."""
    if singular.n != n + 1 or singular.P is None:
        raise ConfigurationError("need the exact report for size n+1")
    tuples = singular.P * 2 ** (n * (n + 1))
    rep = repeat_rows_closed_form(n)
    dep = delta_n_n1 * falling(2**n, n + 1)
    return DecompositionCheck(n, int(tuples), rep, dep, tuples == rep + dep)


@dataclass(frozen=True)
class TrendReport:
    ns: tuple[int, ...]
    ratios: tuple[float, ...]
    intervals: tuple[tuple[float, float], ...]
    monotone_toward_one: bool


def ratio_trend(reports: list[SingularityReport]) -> TrendReport:
    """Is |1 - ratio| non-increasing in n, allowing for the MC intervals? Report only."""
    reports = sorted(reports, key=lambda r: r.n)
    ratios, intervals = [], []
    for r in reports:
        scale = float(asym_scale(r.n))
        ratios.append(float(r.asym_ratio))
        if r.ci is None:
            intervals.append((ratios[-1], ratios[-1]))
        else:
            intervals.append((r.ci[0] / scale, r.ci[1] / scale))

    def dist_range(iv):
        lo, hi = iv
        if lo <= 1 <= hi:
            return 0.0, max(1 - lo, hi - 1)
        return min(abs(1 - lo), abs(hi - 1)), max(abs(1 - lo), abs(hi - 1))

    ok = True
    for a, b in zip(intervals, intervals[1:]):
        if dist_range(b)[0] > dist_range(a)[1]:
            ok = False
    return TrendReport(tuple(r.n for r in reports), tuple(ratios), tuple(intervals), ok)
