"""Points of RP^n, ordered configurations, projections along a point."""
from __future__ import annotations

import hashlib
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BudgetExhausted, ConfigurationError
from .linalg import (
    Number,
    dot,
    orthogonal_complement_basis,
    primitive,
    rank_rational,
)

EN_LIMIT = 20
GENERIC_EXHAUSTIVE_LIMIT = 10**6
GENERIC_SAMPLE_SIZE = 10**5


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    rep: tuple[int, ...]

    def __post_init__(self):
        if not any(self.rep):
            raise ConfigurationError("the zero vector is not a projective point")
        if canonical_rep(self.rep) != self.rep:
            raise ConfigurationError(f"{self.rep} is not a canonical representative")

    def __len__(self):
        return len(self.rep)

    def __repr__(self):
        return f"P{self.rep}"


def canonical_rep(v: Sequence[Number]) -> tuple[int, ...]:
    rep = primitive(v)
    if not any(rep):
        raise ConfigurationError("the zero vector is not a projective point")
    lead = next(x for x in rep if x != 0)
    if lead < 0:
        rep = tuple(-x for x in rep)
    return rep


def canonicalize(v: Sequence[Number]) -> ProjectivePoint:
    """Canonical point: integer entries, gcd 1, first nonzero entry positive."""
    return ProjectivePoint(canonical_rep(v))


@dataclass(frozen=True)
class Configuration:
    """Ordered finite subset of RP^ambient_dim. List position i is pi(i+1)."""

    ambient_dim: int
    points: tuple[ProjectivePoint, ...]

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise ConfigurationError("negative ambient dimension")
        for p in self.points:
            if len(p.rep) != self.ambient_dim + 1:
                raise ConfigurationError(
                    f"point {p.rep} does not live in R^{self.ambient_dim + 1}")
        if len(set(self.points)) != len(self.points):
            raise ConfigurationError("configuration points must be pairwise distinct")

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[Number]], ambient_dim: int | None = None) -> "Configuration":
        pts = [canonicalize(v) for v in vectors]
        if ambient_dim is None:
            if not pts:
                raise ConfigurationError("cannot infer the dimension of an empty configuration")
            ambient_dim = len(pts[0].rep) - 1
        return cls(ambient_dim, tuple(pts))

    @property
    def n(self) -> int:
        return self.ambient_dim

    @property
    def reps(self) -> list[tuple[int, ...]]:
        return [p.rep for p in self.points]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def index(self, p: ProjectivePoint) -> int:
        return self.points.index(p)

    def __contains__(self, p) -> bool:
        return p in self.points

    def span_rank(self) -> int:
        return rank_rational(self.reps)

    def full_span(self) -> bool:
        return self.span_rank() == self.ambient_dim + 1

    def reordered(self, order: Sequence[int]) -> "Configuration":
        """Configuration whose i-th point is ``self[order[i]]``."""
        if sorted(order) != list(range(len(self))):
            raise ConfigurationError("order must be a permutation of the point indices")
        return Configuration(self.ambient_dim, tuple(self.points[i] for i in order))

    def subset(self, indices: Iterable[int]) -> "Configuration":
        return Configuration(self.ambient_dim, tuple(self.points[i] for i in indices))

    def with_points(self, *extra: ProjectivePoint) -> "Configuration":
        return Configuration(self.ambient_dim, self.points + tuple(extra))

    def without(self, i: int) -> "Configuration":
        return Configuration(self.ambient_dim, self.points[:i] + self.points[i + 1:])

    def content_hash(self) -> str:
        h = hashlib.sha256(dump_config(self).encode())
        return h.hexdigest()[:16]


def generate_En(n: int, limit: int = EN_LIMIT) -> Configuration:
    """The 2^n points (1, b_1, ..., b_n), b in {+1,-1}^n, lexicographic in b (+1 first)."""
    if n < 1:
        raise ConfigurationError("n must be at least 1")
    if n > limit:
        raise BudgetExhausted(f"E_{n} exceeds the configured limit n <= {limit}")
    pts = tuple(ProjectivePoint((1,) + b) for b in itertools.product((1, -1), repeat=n))
    return Configuration(n, pts)


@dataclass(frozen=True)
class ProjectionResult:
    image: Configuration
    preimage_classes: tuple[tuple[int, ...], ...]
    min_index: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]


def _coordinates(v: Sequence[int], basis: Sequence[Sequence[int]]) -> list[Fraction]:
    return [Fraction(dot(v, b), dot(b, b)) for b in basis]


def project_config(H: Configuration, u: ProjectivePoint) -> ProjectionResult:
    """Project every point of ``H`` along ``u`` into ``u``-perp, merging collisions.

    The image is expressed in coordinates with respect to a pairwise orthogonal
    integer basis of ``u``-perp, so it lives in RP^(n-1). Image points are ordered
    by the smallest source index mapping onto them; indices are 0-based.
    """
    if len(u.rep) != H.ambient_dim + 1:
        raise ConfigurationError("u lives in a different ambient space")
    if u in H:
        raise ConfigurationError("u must not belong to the configuration")
    if H.ambient_dim < 1:
        raise ConfigurationError("cannot project a configuration in RP^0")
    basis = orthogonal_complement_basis(u.rep)
    classes: dict[ProjectivePoint, list[int]] = {}
    for i, p in enumerate(H.points):
        coords = _coordinates(p.rep, basis)
        assert any(coords), "source point coincides with the projection direction"
        classes.setdefault(canonicalize(coords), []).append(i)
    # dict preserves first-insertion order, i.e. increasing minimal index
    image = Configuration(H.ambient_dim - 1, tuple(classes))
    pre = tuple(tuple(v) for v in classes.values())
    return ProjectionResult(image, pre, tuple(c[0] for c in pre), tuple(basis))


def _generic_against(u: tuple[int, ...], reps: Sequence[tuple[int, ...]], n: int,
                     subsets: Iterable[Sequence[int]]) -> bool:
    for S in subsets:
        rows = [reps[i] for i in S]
        if rank_rational(rows) == n and rank_rational(rows + [u]) == n:
            return False
    return True


def genericity_mode(H: Configuration) -> str:
    total = math.comb(len(H), H.ambient_dim)
    return "exhaustive" if total <= GENERIC_EXHAUSTIVE_LIMIT else "probabilistic"


def is_generic(u: ProjectivePoint, H: Configuration, rng: random.Random | None = None) -> bool:
    """``u`` avoids ``H`` and every hyperplane spanned by ``n`` points of ``H``."""
    if u in H:
        return False
    n = H.ambient_dim
    reps = H.reps
    if genericity_mode(H) == "exhaustive":
        subsets: Iterable[Sequence[int]] = itertools.combinations(range(len(H)), n)
    else:
        rng = rng or random.Random(0)
        subsets = (rng.sample(range(len(H)), n) for _ in range(GENERIC_SAMPLE_SIZE))
    return _generic_against(u.rep, reps, n, subsets)


def sample_generic_point(H: Configuration, seed: int, general: bool = True,
                         max_attempts: int = 1000) -> ProjectivePoint:
    """Deterministic (in ``seed``) point outside ``H``.

    With ``general`` the point also avoids all hyperplanes spanned by ``n``
    points of ``H``; see :func:`genericity_mode` for how that is verified.
    """
    n = H.ambient_dim
    bound = 2 ** (n + 4)
    rng = random.Random(seed)
    for _ in range(max_attempts):
        v = [rng.randint(-bound, bound) for _ in range(n + 1)]
        if not any(v):
            continue
        u = canonicalize(v)
        if u in H:
            continue
        if not general or is_generic(u, H, random.Random(rng.getrandbits(64))):
            return u
    raise BudgetExhausted(f"no generic point found in {max_attempts} attempts")


@dataclass(frozen=True)
class ChainProjector:
    """Orthogonal projector of R^(n+1) onto a k-dimensional subspace V_k.

    ``basis`` holds k pairwise orthogonal integer vectors spanning V_k;
    :meth:`coords` gives the coordinates of the projection of a vector in it.
    """

    k: int
    basis: tuple[tuple[int, ...], ...]
    mode: str

    def coords(self, v: Sequence[int]) -> list[Fraction]:
        return _coordinates(v, self.basis)

    def matrix(self) -> list[list[Fraction]]:
        """The (n+1)x(n+1) rational projector matrix sum_i b_i b_i^T / |b_i|^2."""
        d = len(self.basis[0])
        m = [[Fraction(0)] * d for _ in range(d)]
        for b in self.basis:
            bb = dot(b, b)
            for i in range(d):
                for j in range(d):
                    m[i][j] += Fraction(b[i] * b[j], bb)
        return m

    def image(self, H: Configuration) -> Configuration:
        pts = [canonicalize(self.coords(r)) for r in H.reps]
        return Configuration(self.k - 1, tuple(pts))


def _orthogonalize(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    ortho: list[list[Fraction]] = []
    for v in rows:
        x = [Fraction(a) for a in v]
        for e in ortho:
            c = dot(x, e) / dot(e, e)
            x = [a - c * b for a, b in zip(x, e)]
        ortho.append(x)
    return tuple(primitive(e) for e in ortho)


CHAIN_EXHAUSTIVE_MAX_N = 4
CHAIN_SAMPLE_SIZE = 20000


def preserves_independence(proj: ChainProjector, E: Configuration, subsets: Iterable[Sequence[int]]) -> bool:
    reps = E.reps
    k = proj.k
    for S in subsets:
        rows = [reps[i] for i in S]
        if rank_rational(rows) == k and rank_rational([proj.coords(r) for r in rows]) < k:
            return False
    return True


def projection_chain(n: int, seed: int, max_resamples: int = 50,
                     bound: int = 8) -> list[ChainProjector]:
    """Projectors P_k, k = n+1 down to 2, keeping independent k-subsets of E_n independent.

    Verification is exhaustive for n <= 4 and uses random k-subsets beyond.
    """
    E = generate_En(n)
    T = len(E)
    rng = random.Random(seed)
    exhaustive = n <= CHAIN_EXHAUSTIVE_MAX_N
    mode = "exhaustive" if exhaustive else "sampled"
    identity = tuple(tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1))
    chain = [ChainProjector(n + 1, identity, "identity")]
    for k in range(n, 1, -1):
        for _ in range(max_resamples):
            rows = [[rng.randint(-bound, bound) for _ in range(n + 1)] for _ in range(k)]
            if rank_rational(rows) < k:
                continue
            proj = ChainProjector(k, _orthogonalize(rows), mode)
            if exhaustive:
                subsets: Iterable[Sequence[int]] = itertools.combinations(range(T), k)
            else:
                sub_rng = random.Random(rng.getrandbits(64))
                subsets = (sub_rng.sample(range(T), k) for _ in range(CHAIN_SAMPLE_SIZE))
            if preserves_independence(proj, E, subsets):
                chain.append(proj)
                break
        else:
            raise BudgetExhausted(f"no admissible projector onto a {k}-dim subspace "
                                  f"after {max_resamples} resamples")
    return chain


# -- text format ---------------------------------------------------------------

def parse_config(text: str) -> Configuration:
    """Parse ``dim N`` followed by one integer point per line; ``#`` starts a comment line."""
    dim = None
    vectors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dim is None:
            head = line.split()
            if len(head) != 2 or head[0] != "dim":
                raise ConfigurationError(f"line {lineno}: expected 'dim N'")
            dim = int(head[1])
            continue
        try:
            v = [int(x) for x in line.split()]
        except ValueError:
            raise ConfigurationError(f"line {lineno}: non-integer coordinate") from None
        if len(v) != dim + 1:
            raise ConfigurationError(f"line {lineno}: expected {dim + 1} coordinates")
        vectors.append(v)
    if dim is None:
        raise ConfigurationError("missing 'dim N' header")
    return Configuration.from_vectors(vectors, dim)


def dump_config(H: Configuration) -> str:
    lines = [f"dim {H.ambient_dim}"]
    lines += [" ".join(str(x) for x in r) for r in H.reps]
    return "\n".join(lines) + "\n"


def load_config(path: str | Path) -> Configuration:
    return parse_config(Path(path).read_text())
