"""The complex K^H over GF(2) and the relative-homology bases C^pi_n, D^pi_n.

A subset of the configuration is a simplex of K^H iff it spans a proper
subspace of R^(n+1). All homology here is reduced, with coefficients in GF(2).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import IO, Sequence

from .errors import BudgetExhausted, ConfigurationError, InvariantViolation
from .linalg import Subspace, gf2_rank_rows, rank_rational
from .projective import Configuration

SIMPLEX_CAP = 2 * 10**6


class DegeneracyOracle:
    """Memoized test "does this index set span a proper subspace"."""

    def __init__(self, H: Configuration):
        self.H = H
        self.reps = H.reps
        self.full = H.full_span()
        self._memo: dict[tuple[int, ...], bool] = {}

    def rank(self, S: Sequence[int]) -> int:
        return rank_rational([self.reps[i] for i in S])

    def __call__(self, S: Sequence[int]) -> bool:
        key = tuple(sorted(S))
        hit = self._memo.get(key)
        if hit is None:
            if len(key) <= self.H.ambient_dim:
                hit = True
            else:
                hit = self.rank(key) < self.H.ambient_dim + 1
            self._memo[key] = hit
        return hit


def is_simplex(H: Configuration, S: Sequence[int]) -> bool:
    if any(i < 0 or i >= len(H) for i in S):
        raise ConfigurationError("simplex index out of range")
    return DegeneracyOracle(H)(S)


def simplices(H: Configuration, d: int, oracle: DegeneracyOracle | None = None,
              cap: int = SIMPLEX_CAP) -> list[tuple[int, ...]]:
    """All d-simplices (index sets of size d+1) in lexicographic order; d = -1 gives the empty simplex."""
    if d < -1:
        return []
    oracle = oracle or DegeneracyOracle(H)
    out = []
    for S in itertools.combinations(range(len(H)), d + 1):
        if oracle(S):
            out.append(S)
            if len(out) > cap:
                raise BudgetExhausted(f"more than {cap} simplices in degree {d}")
    return out


def boundary_rows(faces: Sequence[tuple[int, ...]], cells: Sequence[tuple[int, ...]]) -> list[int]:
    """Boundary of each cell as a bit-row over ``faces`` (mod 2)."""
    index = {f: j for j, f in enumerate(faces)}
    rows = []
    for c in cells:
        r = 0
        for i in range(len(c)):
            r |= 1 << index[c[:i] + c[i + 1:]]
        rows.append(r)
    return rows


def boundary_rank(H: Configuration, d: int, oracle: DegeneracyOracle | None = None) -> int:
    """GF(2) rank of the reduced boundary map C_d -> C_{d-1}."""
    if d < 0:
        return 0
    oracle = oracle or DegeneracyOracle(H)
    cells = simplices(H, d, oracle)
    faces = simplices(H, d - 1, oracle)
    return gf2_rank_rows(boundary_rows(faces, cells))


def homology_rank(H: Configuration, d: int) -> int:
    """rank of reduced H_d(K^H; GF(2)); zero when H does not span (K^H is a full simplex)."""
    if d > H.ambient_dim:
        raise ConfigurationError("degree exceeds the ambient dimension")
    if d < -1:
        return 0
    oracle = DegeneracyOracle(H)
    if not oracle.full:
        return 0
    cells = simplices(H, d, oracle)
    return len(cells) - boundary_rank(H, d, oracle) - boundary_rank(H, d + 1, oracle)


@dataclass(frozen=True)
class RelativeRankReport:
    rank_rel: int   # H_n(K, K_{n-1})
    rank_skel: int  # H_{n-1}(K_{n-1})
    rank_abs: int   # H_{n-1}(K)


def relative_ranks(H: Configuration) -> RelativeRankReport:
    """Ranks in the exact sequence 0 -> H_n(K, K_{n-1}) -> H_{n-1}(K_{n-1}) -> H_{n-1}(K) -> 0.

    Relative chains of the pair vanish below degree n, so
    H_n(K, K_{n-1}) = C_n / im d_{n+1}.
    """
    n = H.ambient_dim
    oracle = DegeneracyOracle(H)
    if not oracle.full:
        return RelativeRankReport(0, 0, 0)
    c_n = simplices(H, n, oracle)
    c_nm1 = simplices(H, n - 1, oracle)
    r_top = boundary_rank(H, n + 1, oracle)
    r_n = gf2_rank_rows(boundary_rows(c_nm1, c_n)) if n >= 0 else 0
    r_nm1 = boundary_rank(H, n - 1, oracle)
    rel = len(c_n) - r_top
    skel = len(c_nm1) - r_nm1
    absolute = len(c_nm1) - r_nm1 - r_n
    if skel != rel + absolute:
        raise InvariantViolation(
            f"exact sequence fails: skel={skel}, rel={rel}, abs={absolute}")
    return RelativeRankReport(rel, skel, absolute)


def dump_boundary(H: Configuration, d: int, out: IO[str]) -> None:
    """Write the GF(2) boundary map C_d -> C_{d-1} as sparse ``row col 1`` triplets.

    Rows index (d-1)-simplices, columns index d-simplices, both in
    lexicographic order; a header line gives the shape.
    """
    oracle = DegeneracyOracle(H)
    cells = simplices(H, d, oracle)
    faces = simplices(H, d - 1, oracle)
    index = {f: j for j, f in enumerate(faces)}
    out.write(f"# {len(faces)} {len(cells)}\n")
    for col, c in enumerate(cells):
        for i in range(len(c)):
            out.write(f"{index[c[:i] + c[i + 1:]]} {col} 1\n")


# -- combinatorial bases ---------------------------------------------------------

def _order_positions(H: Configuration, order: Sequence[int] | None) -> list[int]:
    order = list(range(len(H))) if order is None else list(order)
    if sorted(order) != list(range(len(H))):
        raise ConfigurationError("order must be a permutation of the point indices")
    return order


@dataclass(frozen=True)
class _Analysis:
    t: int | None          # t(Delta), 1-based, None if no t qualifies
    w_max: int | None      # position (0-based) of the pi-maximal element of Delta(H)


def _analyse(reps: Sequence[Sequence[int]], pos: Sequence[int], dim: int) -> _Analysis:
    # pos: increasing 0-based positions i_1 < ... < i_{n+1} into the reordered reps
    m = len(pos) - 1
    t_best = None
    w_best = None
    for t in range(1, m + 1):
        suffix = Subspace.span([reps[p] for p in pos[t:]], dim)
        if suffix.contains(reps[pos[t - 1]]):
            t_best = t
        bound = pos[t]  # i_{t+1}
        for p in range(bound):
            if (w_best is None or p > w_best) and suffix.contains(reps[p]):
                w_best = p
    return _Analysis(t_best, w_best)


def enumerate_Cpi(H: Configuration, order: Sequence[int] | None = None,
                  cap: int = SIMPLEX_CAP) -> list[tuple[int, ...]]:
    """Degenerate (n+1)-sets Delta, increasing in pi, with w_{i_t(Delta)} the pi-maximal point of Delta(H).

    Tuples are returned as indices into ``H`` listed in pi-order.
    """
    order = _order_positions(H, order)
    n = H.ambient_dim
    if not H.full_span():
        raise ConfigurationError("C^pi_n needs a spanning configuration")
    reps = [H.reps[i] for i in order]
    out = []
    for pos in itertools.combinations(range(len(H)), n + 1):
        if rank_rational([reps[p] for p in pos]) == n + 1:
            continue
        a = _analyse(reps, pos, n + 1)
        if a.t is not None and pos[a.t - 1] == a.w_max:
            out.append(tuple(order[p] for p in pos))
            if len(out) > cap:
                raise BudgetExhausted(f"more than {cap} tuples in C^pi_n")
    return out


def t_position(H: Configuration, delta: Sequence[int], order: Sequence[int] | None = None) -> int:
    """t(Delta) (1-based) for a pi-increasing degenerate tuple of ``H`` indices."""
    order = _order_positions(H, order)
    where = {h: p for p, h in enumerate(order)}
    pos = [where[i] for i in delta]
    if pos != sorted(pos) or len(pos) != H.ambient_dim + 1:
        raise ConfigurationError("Delta must be an increasing (n+1)-tuple in the order")
    reps = [H.reps[i] for i in order]
    a = _analyse(reps, pos, H.ambient_dim + 1)
    if a.t is None or pos[a.t - 1] != a.w_max:
        raise ConfigurationError("Delta is not in C^pi_n(H)")
    return a.t


def t_hat(delta: Sequence[int], H: Configuration, order: Sequence[int] | None = None) -> tuple[int, ...]:
    """Delete the entry at position t(Delta)."""
    t = t_position(H, delta, order)
    return tuple(delta[:t - 1]) + tuple(delta[t:])


def enumerate_Cpi_nonzero(H: Configuration, order: Sequence[int], w: int) -> list[tuple[int, ...]]:
    """Tuples of C^pi_n(H) spanning an n-space that misses the point ``w``."""
    n = H.ambient_dim
    out = []
    for delta in enumerate_Cpi(H, order):
        rows = [H.reps[i] for i in delta]
        if rank_rational(rows) == n and not Subspace.span(rows, n + 1).contains(H.reps[w]):
            out.append(delta)
    return out


def enumerate_Dpi(H: Configuration, w: int) -> int:
    """Number of n-subsets S of H - {w} with {w} u S degenerate."""
    n = H.ambient_dim
    if not 0 <= w < len(H):
        raise ConfigurationError("w must index a point of H")
    if not H.full_span():
        raise ConfigurationError("D_n needs a spanning configuration")
    reps = H.reps
    others = [i for i in range(len(H)) if i != w]
    return sum(1 for S in itertools.combinations(others, n)
               if rank_rational([reps[w]] + [reps[i] for i in S]) < n + 1)


def order_with_first(H: Configuration, w: int, order: Sequence[int] | None = None) -> list[int]:
    """``order`` with ``w`` moved to the front, the rest keeping their relative order."""
    order = _order_positions(H, order)
    return [w] + [i for i in order if i != w]
