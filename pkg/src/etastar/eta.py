"""eta-star: the rank of H_{n-1}(K^H) computed three ways, and its identities.

Orders are lists of point indices: ``order[0]`` is the pi-smallest point.
Tuples of points are passed as tuples of indices into the configuration.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import ConfigurationError
from .homology import (
    enumerate_Cpi,
    enumerate_Cpi_nonzero,
    enumerate_Dpi,
    homology_rank,
    relative_ranks,
    t_hat,
)
from .linalg import Subspace, rank_rational
from .projective import Configuration, ProjectivePoint, project_config


class SpanIndex:
    """Memoized ``span(S) & H`` and rank(S) for index sets S of one configuration."""

    def __init__(self, H: Configuration):
        self.H = H
        self.reps = H.reps
        self.dim = H.ambient_dim + 1
        self._members: dict[frozenset, frozenset] = {}
        self._rank: dict[frozenset, int] = {}

    def rank(self, S) -> int:
        key = frozenset(S)
        r = self._rank.get(key)
        if r is None:
            r = rank_rational([self.reps[i] for i in key])
            self._rank[key] = r
        return r

    def independent(self, S) -> bool:
        return self.rank(S) == len(set(S))

    def members(self, S) -> frozenset:
        key = frozenset(S)
        m = self._members.get(key)
        if m is None:
            sub = Subspace.span([self.reps[i] for i in key], self.dim)
            m = frozenset(i for i in range(len(self.reps)) if i in key or sub.contains(self.reps[i]))
            self._members[key] = m
        return m


def _check_order(H: Configuration, order: Sequence[int] | None) -> list[int]:
    order = list(range(len(H))) if order is None else list(order)
    if sorted(order) != list(range(len(H))):
        raise ConfigurationError("order must be a permutation of the point indices")
    return order


# -- eta via orders --------------------------------------------------------------

def satisfies_eta(H: Configuration, order: Sequence[int] | None, W: Sequence[int],
                  spans: SpanIndex | None = None) -> bool:
    """Does ``W`` satisfy the eta^pi_n condition?

    Entries must sit at strictly increasing pi-positions, never at the first
    one, and each ``W[l]`` must be the pi-smallest configuration point in
    ``span(W[l:])``.
    """
    n = H.ambient_dim
    if len(W) != n:
        raise ConfigurationError(f"expected a tuple of length {n}, got {len(W)}")
    order = _check_order(H, order)
    where = {h: p for p, h in enumerate(order)}
    pos = [where[i] for i in W]
    if any(p == 0 for p in pos) or any(a >= b for a, b in zip(pos, pos[1:])):
        return False
    spans = spans or SpanIndex(H)
    for l in range(n):
        first = min(where[i] for i in spans.members(W[l:]))
        if first != pos[l]:
            return False
    return True


def _eta_tuples(H: Configuration, order: list[int], spans: SpanIndex) -> Iterator[tuple[int, ...]]:
    # Build tuples right to left; a prefix is kept only if its first entry is
    # the pi-smallest point of its span, which is exactly the eta condition.
    n = H.ambient_dim
    where = {h: p for p, h in enumerate(order)}

    def grow(suffix: tuple[int, ...], limit: int) -> Iterator[tuple[int, ...]]:
        if len(suffix) == n:
            yield suffix
            return
        for p in range(1, limit):
            cand = (order[p],) + suffix
            if min(where[i] for i in spans.members(cand)) == p:
                yield from grow(cand, p)

    yield from grow((), len(H))


def eta_star_via_order(H: Configuration, order: Sequence[int] | None = None) -> int:
    """|B^pi(H)|, the number of tuples satisfying the eta^pi_n condition; 0 without full span."""
    order = _check_order(H, order)
    if rank_rational(H.reps) < H.ambient_dim + 1:
        return 0
    return sum(1 for _ in _eta_tuples(H, order, SpanIndex(H)))


def eta_tuples(H: Configuration, order: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    order = _check_order(H, order)
    if rank_rational(H.reps) < H.ambient_dim + 1:
        return []
    return list(_eta_tuples(H, order, SpanIndex(H)))


def eta_star_via_homology(H: Configuration) -> int:
    return homology_rank(H, H.ambient_dim - 1)


# -- flags -----------------------------------------------------------------------

@dataclass(frozen=True)
class FlagProfile:
    q: tuple[int, ...]  # (q_s, ..., q_1)

    @property
    def product(self) -> int:
        return math.prod(self.q)


def flag_profile(H: Configuration, W: Sequence[int], spans: SpanIndex | None = None) -> FlagProfile:
    """q_l = number of configuration points in the span of the last l entries of W."""
    spans = spans or SpanIndex(H)
    if not spans.independent(W):
        raise ConfigurationError("flag profiles need a linearly independent tuple")
    s = len(W)
    return FlagProfile(tuple(len(spans.members(W[s - l:])) for l in range(s, 0, -1)))


def _ordered_independent(H: Configuration, s: int, spans: SpanIndex,
                         allowed: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    pool = list(range(len(H))) if allowed is None else list(allowed)

    def grow(suffix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(suffix) == s:
            yield suffix
            return
        for i in pool:
            if i in suffix:
                continue
            cand = (i,) + suffix
            if spans.independent(cand):
                yield from grow(cand)

    yield from grow(())


def validate_probability(H: Configuration, p: Sequence) -> list[Fraction]:
    p = [Fraction(x) for x in p]
    if len(p) != len(H):
        raise ConfigurationError("one weight per configuration point is required")
    if sum(p) != 1:
        raise ConfigurationError(f"weights must sum to exactly 1, got {sum(p)}")
    return p


def eta_star_via_flags(H: Configuration, p: Sequence | None = None) -> Fraction:
    """Sum over ordered independent n-tuples W of (1 - p(span W)) / W[H].

    Any real weights summing to 1 are accepted (the expression is affine in p).
    """
    if p is None:
        p = [Fraction(1, len(H))] * len(H)
    p = validate_probability(H, p)
    n = H.ambient_dim
    if rank_rational(H.reps) < n + 1:
        raise ConfigurationError("the flag formula needs a spanning configuration")
    spans = SpanIndex(H)
    total = Fraction(0)
    for W in _ordered_independent(H, n, spans):
        prod = 1
        for l in range(n):
            prod *= len(spans.members(W[l:]))
        mass = sum(p[j] for j in spans.members(W))
        total += (1 - mass) / prod
    return total


# -- identities -------------------------------------------------------------------

@dataclass(frozen=True)
class SupermodularCheck:
    holds: bool
    eta_H: int
    eta_Hu: int
    eta_Hv: int
    eta_Huv: int

    def __bool__(self):
        return self.holds


def check_supermodular(H: Configuration, u: ProjectivePoint, v: ProjectivePoint) -> SupermodularCheck:
    if u == v or u in H or v in H:
        raise ConfigurationError("u, v must be distinct and outside H")
    e = eta_star_via_order(H)
    eu = eta_star_via_order(H.with_points(u))
    ev = eta_star_via_order(H.with_points(v))
    euv = eta_star_via_order(H.with_points(u, v))
    return SupermodularCheck(eu - e <= euv - ev, e, eu, ev, euv)


@dataclass(frozen=True)
class RecursionCheck:
    holds: bool
    lhs: int
    eta_H: int
    eta_image: int
    collisions: int

    def __bool__(self):
        return self.holds


def check_projection_recursion(H: Configuration, u: ProjectivePoint) -> RecursionCheck:
    """eta_n(H + u) = eta_n(H) + eta_{n-1}(H projected along u)."""
    if H.ambient_dim < 1:
        raise ConfigurationError("need n >= 1")
    if u in H:
        raise ConfigurationError("u must lie outside H")
    proj = project_config(H, u)
    lhs = eta_star_via_order(H.with_points(u))
    e = eta_star_via_order(H)
    ei = eta_star_via_order(proj.image)
    return RecursionCheck(lhs == e + ei, lhs, e, ei, len(H) - len(proj.image))


def binom_eta_sum(H: Configuration, w: ProjectivePoint) -> int:
    """Number of n-subsets S of H with {w} u S spanning R^(n+1)."""
    n = H.ambient_dim
    reps = H.reps
    return sum(1 for S in itertools.combinations(range(len(H)), n)
               if rank_rational([w.rep] + [reps[i] for i in S]) == n + 1)


def d_identity_rhs(H: Configuration, w: int) -> int:
    """C(T-1, n) - binom_eta_sum(H, w); must equal D_n(H; w)."""
    return math.comb(len(H) - 1, H.ambient_dim) - binom_eta_sum(H, H[w])


# -- pi-closed and pi-boundary subsets ---------------------------------------------

def _validate_U(H: Configuration, order: list[int], U: Sequence[int], w: int | None,
                spans: SpanIndex) -> list[int]:
    where = {h: p for p, h in enumerate(order)}
    pos = [where[i] for i in U]
    if not U or any(a >= b for a, b in zip(pos, pos[1:])):
        raise ConfigurationError("U must be nonempty and increasing in the order")
    if not spans.independent(U):
        raise ConfigurationError("U must be linearly independent")
    if w is not None and w in spans.members(U):
        raise ConfigurationError("w must not lie in span U")
    return pos


def _suffix_hits(H, order, U, w, spans) -> list[bool]:
    """hits[s-1]: does span(U_s) meet the points pi-before u_{i_s}? (U_s = last s entries)."""
    pos = _validate_U(H, order, U, w, spans)
    where = {h: p for p, h in enumerate(order)}
    hits = []
    for s in range(1, len(U) + 1):
        suffix = U[len(U) - s:]
        first = pos[len(U) - s]
        hits.append(any(where[i] < first for i in spans.members(suffix)))
    return hits


def is_pi_closed(H: Configuration, order: Sequence[int] | None, U: Sequence[int],
                 w: int | None = None, spans: SpanIndex | None = None) -> bool:
    order = _check_order(H, order)
    hits = _suffix_hits(H, order, U, w, spans or SpanIndex(H))
    return not any(hits)


def is_pi_boundary(H: Configuration, order: Sequence[int] | None, U: Sequence[int],
                   w: int | None = None, spans: SpanIndex | None = None) -> bool:
    order = _check_order(H, order)
    hits = _suffix_hits(H, order, U, w, spans or SpanIndex(H))
    return hits[-1] and not any(hits[:-1])


@dataclass(frozen=True)
class PartitionCheck:
    holds: bool
    image_size: int
    blocks: int
    disjoint: bool
    covers: bool
    injective: bool

    def __bool__(self):
        return self.holds


def check_boundary_partition(H: Configuration, order: Sequence[int] | None, w: int) -> PartitionCheck:
    """t-hat(C^pi_{n,!=0}(H; w)) is the disjoint union of C^pi_{n-k}(H^pi_U; U) over pi-boundary U."""
    order = _check_order(H, order)
    if order[0] != w:
        raise ConfigurationError("w must be the pi-smallest point")
    n = H.ambient_dim
    spans = SpanIndex(H)
    nonzero = enumerate_Cpi_nonzero(H, order, w)
    images = {}
    for delta in nonzero:
        images[delta] = t_hat(delta, H, order)
    image_set = set(images.values())
    injective = len(image_set) == len(nonzero)

    blocks: list[set] = []
    rest = [h for h in order if h != w]
    for k in range(0, n - 1):
        size = n - k
        for U in itertools.combinations(rest, size):  # increasing in pi since ``rest`` is
            if not spans.independent(U) or w in spans.members(U):
                continue
            if not is_pi_boundary(H, order, U, w, spans):
                continue
            blocks.append({img for delta, img in images.items() if delta[-size:] == U})
    union = set().union(*blocks) if blocks else set()
    disjoint = sum(len(b) for b in blocks) == len(union)
    covers = union == image_set
    return PartitionCheck(injective and disjoint and covers, len(image_set), len(blocks),
                          disjoint, covers, injective)


def corollary_bound(H: Configuration, w: int, order: Sequence[int] | None = None) -> tuple[int, int, int]:
    """(|C^pi_n|, |C^pi_{n,!=0}(H;w)|, D_n(H;w)) with w moved to the front of the order."""
    order = _check_order(H, order)
    order = [w] + [i for i in order if i != w]
    return (len(enumerate_Cpi(H, order)), len(enumerate_Cpi_nonzero(H, order, w)),
            enumerate_Dpi(H, w))


def relative_rank_bound_rhs(H: Configuration, w: int, max_points: int = 10) -> Fraction:
    """Right-hand side of the upper bound on rank H_n(K^H, K^H_{n-1}).

    Empty ranges of the inner sum over d contribute nothing.
    """
    T = len(H)
    n = H.ambient_dim
    if T > max_points:
        raise ConfigurationError(f"exact evaluation limited to {max_points} points")
    if not H.full_span():
        raise ConfigurationError("needs a spanning configuration")
    spans = SpanIndex(H)
    others = [i for i in range(T) if i != w]
    fact = math.factorial
    total = Fraction(0)
    for k in range(0, n - 1):
        size = n - k
        for U in _ordered_independent(H, size, spans, others):
            if w in spans.members(U):
                continue
            q = flag_profile(H, U, spans).q          # (q_size, ..., q_1)
            q_top, q_next = q[0], q[1]
            tail = math.prod(q[1:])
            gap = q_top - q_next - 1
            inner = 0
            for d in range(k + 3, T - q_next + 1):
                A = (math.comb(T - q_next - 2, gap) - math.comb(T - q_next - d, gap)) * fact(gap)
                inner += (fact(T - d) * fact(T - q_top - 1) // fact(T - q_next - d)) * A * math.comb(d - 2, k)
            total += Fraction(inner, tail)
    return total / fact(T - 1) + enumerate_Dpi(H, w)


def check_relative_rank_bound(H: Configuration, w: int) -> tuple[bool, int, Fraction]:
    rel = relative_ranks(H).rank_rel
    rhs = relative_rank_bound_rhs(H, w)
    return rel <= rhs, rel, rhs


@dataclass(frozen=True)
class SymmetrizedFlag:
    holds: bool
    value: Fraction
    bound: Fraction

    def __bool__(self):
        return self.holds


def symmetrized_flag_bound(H: Configuration, W: Sequence[int], k: int, m: int) -> SymmetrizedFlag:
    """Sum over reorderings sigma of 1/W_sigma[H], compared with k/(k+m)."""
    spans = SpanIndex(H)
    if len(W) != k or not spans.independent(W):
        raise ConfigurationError("W must be an independent k-tuple")
    if len(spans.members(W)) != k + m:
        raise ConfigurationError(f"span W must contain exactly k+m = {k + m} points")
    value = sum((Fraction(1, flag_profile(H, Ws, spans).product)
                 for Ws in itertools.permutations(W)), Fraction(0))
    bound = Fraction(k, k + m)
    return SymmetrizedFlag(value <= bound, value, bound)
