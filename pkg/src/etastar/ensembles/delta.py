"""Dependent-tuple fractions delta_{n,k}, flag spectra gamma^m, and increments eps.

delta_{n,k} is a property of unordered k-sets (dependence does not see the
order), so the exhaustive count runs over k-subsets; the ratio is the same
as over ordered k-tuples of distinct points.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import BudgetExhausted, ConfigurationError, InvariantViolation
from ..eta import SpanIndex
from ..linalg import rank_rational
from ..parallel import map_shards
from ..projective import ChainProjector, Configuration, generate_En, projection_chain
from .batch import hyperplane_normals
from .stats import Estimate, falling

DELTA_BUDGET = 10**8


def _dependent_in(args) -> int:
    reps, k, combos = args
    return sum(1 for S in combos if rank_rational([reps[i] for i in S]) < k)


def dependent_subsets(H: Configuration, k: int, jobs: int = 1) -> int:
    """Number of linearly dependent k-subsets of H, sharded by the first index."""
    reps = H.reps
    T = len(reps)
    shards = []
    for first in range(T):
        combos = [(first,) + rest for rest in itertools.combinations(range(first + 1, T), k - 1)]
        if combos:
            shards.append((reps, k, combos))
    return sum(map_shards(_dependent_in, shards, jobs))


def delta_exact(n: int, k: int, budget: int = DELTA_BUDGET, jobs: int = 1) -> Fraction:
    if not 1 <= k <= n + 1:
        raise ConfigurationError("need 1 <= k <= n+1")
    N = 2**n
    if falling(N, k) > budget:
        raise BudgetExhausted(f"(2^{n})_{k} = {falling(N, k)} ordered tuples exceeds {budget}")
    if k == 1:
        return Fraction(0)
    return Fraction(dependent_subsets(generate_En(n), k, jobs), math.comb(N, k))


def delta_mc(n: int, k: int, samples: int, seed: int) -> Estimate:
    """Uniform ordered k-tuples of distinct points of E_n; fraction that is dependent."""
    if not 1 <= k <= n + 1:
        raise ConfigurationError("need 1 <= k <= n+1")
    E = generate_En(n)
    reps = E.reps
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(samples):
        idx = rng.choice(len(reps), size=k, replace=False)
        if rank_rational([reps[i] for i in idx]) < k:
            hits += 1
    return Estimate(hits, samples, seed)


def delta(n: int, k: int, mode: str = "exhaustive", samples: int = 10**5, seed: int = 0,
          jobs: int = 1):
    if mode == "exhaustive":
        return delta_exact(n, k, jobs=jobs)
    if mode == "monte_carlo":
        return delta_mc(n, k, samples, seed)
    raise ConfigurationError(f"unknown mode {mode!r}")


@dataclass
class DeltaTable:
    n: int
    delta: dict[int, Fraction]
    mode: str = "exhaustive"

    @classmethod
    def exhaustive(cls, n: int, kmax: int | None = None, jobs: int = 1) -> "DeltaTable":
        kmax = n + 1 if kmax is None else kmax
        return cls(n, {k: delta_exact(n, k, jobs=jobs) for k in range(1, kmax + 1)})

    def check(self) -> None:
        if self.delta.get(1, 0) != 0:
            raise InvariantViolation("delta_{n,1} must vanish")
        ks = sorted(self.delta)
        for a, b in zip(ks, ks[1:]):
            if self.delta[b] < self.delta[a]:
                raise InvariantViolation(f"delta decreases between k={a} and k={b}")


# -- flag spectra ------------------------------------------------------------------

@dataclass
class GammaSpectrum:
    n: int
    k: int
    counts: dict[int, int]           # m -> number of independent k-subsets with q_k = k+m
    independent: int
    delta_k: Fraction
    delta_k1: Fraction
    projector_mode: str
    gamma: dict[int, Fraction] = field(init=False)

    def __post_init__(self):
        self.gamma = {m: Fraction(c, self.independent) for m, c in sorted(self.counts.items())}

    @property
    def epsilon(self) -> Fraction:
        """eps_{k+1} = (1 - delta_{n,k}) sum_m gamma^m m / (2^n - k)."""
        N = 2**self.n
        return (1 - self.delta_k) * sum((g * m for m, g in self.gamma.items()), Fraction(0)) / (N - self.k)

    @property
    def epsilon_direct(self) -> Fraction:
        """|B_{k+1}| / (2^n)_{k+1}, with |B_{k+1}| = k! sum_m m * counts[m]."""
        N = 2**self.n
        B = math.factorial(self.k) * sum(m * c for m, c in self.counts.items())
        return Fraction(B, falling(N, self.k + 1))


def _spectrum_counts(H: Configuration, k: int) -> tuple[dict[int, int], int]:
    spans = SpanIndex(H)
    counts: dict[int, int] = {}
    indep = 0
    for S in itertools.combinations(range(len(H)), k):
        if not spans.independent(S):
            continue
        indep += 1
        m = len(spans.members(S)) - k
        counts[m] = counts.get(m, 0) + 1
    return counts, indep


def _top_spectrum_counts(n: int, chunk: int = 1 << 16) -> tuple[dict[int, int], int]:
    """Spectrum for k = n on E_n itself, via integer hyperplane normals."""
    E = np.array(generate_En(n).reps, dtype=np.int64)
    counts: dict[int, int] = {}
    indep = 0
    combos = itertools.combinations(range(len(E)), n)
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            break
        idx = np.array(block)
        normals = hyperplane_normals(E[idx])
        nonzero = normals.any(axis=1)
        q = ((normals[nonzero] @ E.T) == 0).sum(axis=1)
        indep += int(nonzero.sum())
        for m, c in zip(*np.unique(q - n, return_counts=True)):
            counts[int(m)] = counts.get(int(m), 0) + int(c)
    return counts, indep


def gamma_spectrum(n: int, k: int, chain: list[ChainProjector] | None = None,
                   seed: int = 0, deltas: DeltaTable | None = None,
                   vectorized: bool | None = None) -> GammaSpectrum:
    """Classify independent k-sets of E_{n,k+1} by m = q_k - k and cross-check eps_{k+1}.

    For k = n the identity projector is used; smaller k use a verified random chain.
    """
    if not 1 <= k <= n:
        raise ConfigurationError("need 1 <= k <= n")
    if deltas is None:
        deltas = DeltaTable(n, {})
    dk = deltas.delta.get(k)
    if dk is None:
        dk = deltas.delta[k] = delta_exact(n, k)
    dk1 = deltas.delta.get(k + 1)
    if dk1 is None:
        dk1 = deltas.delta[k + 1] = delta_exact(n, k + 1)
    if k == n:
        mode = "identity"
        if vectorized is None:
            vectorized = n >= 4
        if vectorized:
            counts, indep = _top_spectrum_counts(n)
        else:
            counts, indep = _spectrum_counts(generate_En(n), k)
    else:
        chain = chain or projection_chain(n, seed)
        proj = next(p for p in chain if p.k == k + 1)
        mode = proj.mode
        counts, indep = _spectrum_counts(proj.image(generate_En(n)), k)
    spec = GammaSpectrum(n, k, counts, indep, dk, dk1, mode)
    if sum(spec.gamma.values()) != 1:
        raise InvariantViolation("gamma spectrum does not sum to 1")
    if spec.epsilon != spec.epsilon_direct:
        raise InvariantViolation("eps from the spectrum disagrees with the direct count")
    return spec


def telescoping_holds(spec: GammaSpectrum) -> bool:
    return spec.delta_k1 == spec.delta_k + spec.epsilon


@dataclass(frozen=True)
class IncrementReport:
    n: int
    k: int
    increment: Fraction | float
    bound: Fraction
    holds: bool
    ci: tuple[float, float] | None = None


def check_increment_bound(n: int, k: int, mode: str = "exhaustive", samples: int = 10**5,
                          seed: int = 0) -> IncrementReport:
    """delta_{n,k+1} - delta_{n,k} against (k-1)/2^n. Report only: the bound is only claimed for n >= 64."""
    bound = Fraction(k - 1, 2**n)
    if mode == "exhaustive":
        inc = delta_exact(n, k + 1) - delta_exact(n, k)
        return IncrementReport(n, k, inc, bound, inc <= bound)
    lo_est = delta_mc(n, k, samples, seed)
    hi_est = delta_mc(n, k + 1, samples, seed + 1)
    inc = float(hi_est.value - lo_est.value)
    lo1, hi1 = lo_est.ci
    lo2, hi2 = hi_est.ci
    return IncrementReport(n, k, inc, bound, inc <= bound, (lo2 - hi1, hi2 - lo1))


@dataclass(frozen=True)
class LOGapReport:
    n: int
    window: tuple[int, ...]
    gamma: dict[int, Fraction]
    holds: bool


def lo_window(n: int) -> tuple[int, ...]:
    """Integers m with 2^(n-1) - 3n/2 < m < 2^(n-1) - n."""
    lo = Fraction(2 ** (n - 1)) - Fraction(3 * n, 2)
    hi = 2 ** (n - 1) - n
    return tuple(m for m in range(math.floor(lo) + 1, hi) if m > lo)


def check_LO_gap(n: int) -> LOGapReport:
    """gamma^m_{n+1} = 0 on the Littlewood-Offord window (stated for n >= 4)."""
    if n < 4:
        raise ConfigurationError("the vanishing window is stated for n >= 4")
    counts, indep = _top_spectrum_counts(n)
    gamma = {m: Fraction(c, indep) for m, c in sorted(counts.items())}
    window = lo_window(n)
    return LOGapReport(n, window, gamma, all(gamma.get(m, 0) == 0 for m in window))
