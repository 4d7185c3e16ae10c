"""Intersection lattice of a configuration, Moebius function, chamber counts."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .linalg import Subspace
from .errors import BudgetExhausted, ConfigurationError
from .projective import Configuration, project_config

FLAT_CAP = 10**6
DR_CALL_CAP = 10**6
CACHE_SCHEMA = 1


@dataclass(frozen=True)
class Flat:
    """Span of a subset of the configuration.

    ``basis`` is the canonical (reduced echelon, primitive rows) basis, so two
    flats are equal iff their bases are; ``members`` are the 0-based indices of
    the configuration points lying in the flat.
    """

    dim: int
    basis: tuple[tuple[int, ...], ...]
    members: tuple[int, ...]

    @property
    def mask(self) -> int:
        m = 0
        for i in self.members:
            m |= 1 << i
        return m


@dataclass
class IntersectionLattice:
    config: Configuration
    flats: list[Flat]
    moebius: dict[Flat, int] = field(default_factory=dict)

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    @property
    def top(self) -> Flat:
        return self.flats[-1]

    def by_dim(self, d: int) -> list[Flat]:
        return [f for f in self.flats if f.dim == d]

    @staticmethod
    def leq(s: Flat, t: Flat) -> bool:
        return set(s.members) <= set(t.members)

    def __len__(self):
        return len(self.flats)


def build_lattice(H: Configuration, cap: int = FLAT_CAP) -> IntersectionLattice:
    """All distinct spans of subsets of ``H``, graded by dimension.

    Flats of dimension d+1 are obtained by joining each d-flat with each point
    outside it; duplicates are merged through the canonical basis.
    """
    if len(H) == 0:
        raise ConfigurationError("empty configuration")
    reps = H.reps
    d_amb = H.ambient_dim + 1
    T = len(reps)
    bottom = Flat(0, (), ())
    flats = [bottom]
    level = [(bottom, Subspace.span([], d_amb))]
    while level:
        found: dict[tuple, tuple[Flat, Subspace]] = {}
        for flat, space in level:
            inside = set(flat.members)
            covered = set(inside)
            for p in range(T):
                if p in covered:
                    continue
                sub = Subspace.span(list(space.basis) + [reps[p]], d_amb)
                members = tuple(i for i in range(T) if i in inside or i == p or sub.contains(reps[i]))
                covered.update(members)
                key = sub.key()
                if key not in found:
                    found[key] = (Flat(sub.dim, key, members), sub)
                    if len(flats) + len(found) > cap:
                        raise BudgetExhausted(f"lattice exceeds {cap} flats")
        new = sorted(found.values(), key=lambda fs: fs[0].members)
        flats.extend(f for f, _ in new)
        level = new
    L = IntersectionLattice(H, flats)
    L.moebius = moebius_values(L)
    return L


def moebius_values(L: IntersectionLattice) -> dict[Flat, int]:
    """mu(0, t) from mu(0,0) = 1 and sum_{0 <= s <= t} mu(0, s) = 0."""
    mu: dict[Flat, int] = {}
    done: list[tuple[int, int, int]] = []  # (dim, mask, mu)
    for t in L.flats:
        if t.dim == 0:
            mu[t] = 1
            done.append((0, 0, 1))
            continue
        tm = t.mask
        total = 0
        for dim, sm, val in done:
            if dim < t.dim and sm & ~tm == 0:
                total += val
        mu[t] = -total
        done.append((t.dim, tm, -total))
    return mu


def chambers_zaslavsky(H: Configuration, lattice: IntersectionLattice | None = None) -> int:
    L = lattice or build_lattice(H)
    return sum(abs(v) for v in L.moebius.values())


def moebius_top_abs(H: Configuration, lattice: IntersectionLattice | None = None) -> int:
    L = lattice or build_lattice(H)
    if L.top.dim != H.ambient_dim + 1:
        raise ConfigurationError("the configuration does not span the ambient space")
    return abs(L.moebius[L.top])


def chambers_deletion_restriction(H: Configuration, cap: int = DR_CALL_CAP) -> int:
    """r(A) = r(A - h) + r(A restricted to h), always removing the last point."""
    calls = 0

    @lru_cache(maxsize=None)
    def r(A: Configuration) -> int:
        nonlocal calls
        calls += 1
        if calls > cap:
            raise BudgetExhausted(f"deletion-restriction exceeded {cap} calls")
        if len(A) == 0:
            return 1
        if A.ambient_dim == 0:
            return 2
        h = A.points[-1]
        rest = A.without(len(A) - 1)
        if len(rest) == 0:
            return 2
        return r(rest) + r(project_config(rest, h).image)

    return r(H)


# -- cache ---------------------------------------------------------------------

def lattice_to_json(L: IntersectionLattice) -> dict:
    return {
        "schema": CACHE_SCHEMA,
        "config_hash": L.config.content_hash(),
        "ambient_dim": L.config.ambient_dim,
        "points": [list(r) for r in L.config.reps],
        "flats": [
            {"dim": f.dim, "basis": [list(b) for b in f.basis],
             "members": list(f.members), "moebius": L.moebius[f]}
            for f in L.flats
        ],
    }


def lattice_from_json(data: dict) -> IntersectionLattice:
    if data.get("schema") != CACHE_SCHEMA:
        raise ValueError("lattice cache schema mismatch")
    H = Configuration.from_vectors(data["points"], data["ambient_dim"])
    flats, mu = [], {}
    for rec in data["flats"]:
        f = Flat(rec["dim"], tuple(tuple(b) for b in rec["basis"]), tuple(rec["members"]))
        flats.append(f)
        mu[f] = rec["moebius"]
    return IntersectionLattice(H, flats, mu)


class LatticeCache:
    """Directory of lattices stored as JSON, one file per configuration hash."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def path_for(self, H: Configuration) -> Path:
        return self.root / f"lattice-{H.content_hash()}.json"

    def get(self, H: Configuration, cap: int = FLAT_CAP) -> IntersectionLattice:
        path = self.path_for(H)
        if path.exists():
            L = lattice_from_json(json.loads(path.read_text()))
            if L.config == H:
                return L
        L = build_lattice(H, cap)
        self.root.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(lattice_to_json(L)))
        return L
