"""Deterministic invariant suite behind ``etastar verify``.

Every check draws from its own ``random.Random`` seeded by (seed, check id),
so adding or reordering checks never perturbs the others. A check reports
one of three statuses: "pass", "fail", or "flagged". Flagged checks are
report-only statements known to be false or outside their stated range at
desk scale; they never make the suite fail.
"""
from __future__ import annotations

import itertools
import random
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import fixtures
from .ensembles import singular as sg
from .ensembles import threshold as th
from .ensembles.delta import (DeltaTable, check_increment_bound, check_LO_gap, delta_exact, delta_mc,
                              gamma_spectrum, telescoping_holds)
from .errors import InvariantViolation
from .eta import (binom_eta_sum, check_boundary_partition, check_projection_recursion,
                  check_supermodular, check_relative_rank_bound, corollary_bound, d_identity_rhs,
                  eta_star_via_flags, eta_star_via_homology, eta_star_via_order)
from .homology import enumerate_Cpi, enumerate_Dpi, homology_rank, order_with_first, relative_ranks
from .lattice import build_lattice, chambers_deletion_restriction, chambers_zaslavsky, moebius_top_abs
from .linalg import (Gf2Matrix, Subspace, dot, gf2_rank, in_span, project_off, rank_rational)
from .projective import (Configuration, canonicalize, generate_En, is_generic, project_config,
                         projection_chain, sample_generic_point)

LEVELS = ("quick", "full")


@dataclass(frozen=True)
class Level:
    name: str
    configs: int
    max_points: int
    max_dim: int
    orders: int
    pairs: int
    max_n: int
    singular_n: int
    mc_samples: int


QUICK = Level("quick", 8, 7, 3, 5, 10, 3, 4, 20000)
FULL = Level("full", 100, 10, 4, 20, 200, 4, 5, 10**6)


@dataclass
class Outcome:
    status: str
    detail: dict


CHECKS: list[tuple[str, str, Callable]] = []


def check(module: str, name: str):
    def wrap(fn):
        CHECKS.append((module, name, fn))
        return fn
    return wrap


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(seed * 1_000_003 + zlib.crc32(name.encode()))


def corpus(level: Level, rng: random.Random) -> list[Configuration]:
    named = [generate_En(1), generate_En(2), generate_En(3), fixtures.three_point_line()]
    named += [fixtures.coordinate_simplex(n) for n in range(1, level.max_dim + 1)]
    rand = [fixtures.random_configuration(rng, level.max_points, level.max_dim)
            for _ in range(level.configs)]
    return named + rand


def _outcome(failures: list, **detail) -> Outcome:
    detail["failures"] = failures[:5]
    return Outcome("pass" if not failures else "fail", detail)


def _shuffled(rng: random.Random, m: int) -> list[int]:
    order = list(range(m))
    rng.shuffle(order)
    return order


def _probability_vectors(rng: random.Random, T: int) -> list[list[Fraction]]:
    vecs = [[Fraction(1, T)] * T]
    while len(vecs) < 4:
        w = [rng.randint(0, 5) for _ in range(T)]
        if sum(w):
            vecs.append([Fraction(x, sum(w)) for x in w])
    neg = [Fraction(rng.randint(1, 4)) for _ in range(T)]
    neg[rng.randrange(T)] = Fraction(-1)
    s = sum(neg)
    if s == 0:
        neg[0] += 1
        s = 1
    vecs.append([x / s for x in neg])
    return vecs


# -- exact linear algebra ------------------------------------------------------------

def _rand_rows(rng, r, c, b=3):
    return [[Fraction(rng.randint(-b, b)) for _ in range(c)] for _ in range(r)]


@check("exact_linalg", "rank_permutation_and_scaling")
def _(level, rng):
    fails = []
    for _ in range(50):
        rows = _rand_rows(rng, rng.randint(1, 6), rng.randint(1, 6), 2)
        r = rank_rational(rows)
        perm = rows[:]
        rng.shuffle(perm)
        scaled = [[x * lam for x in row] for row in rows
                  for lam in [Fraction(rng.choice([-3, -1, 2, 5]), rng.randint(1, 4))]]
        if rank_rational(perm) != r or rank_rational(scaled) != r:
            fails.append(rows)
    return _outcome(fails, instances=50)


@check("exact_linalg", "project_off_orthogonal")
def _(level, rng):
    fails = []
    for _ in range(50):
        m = rng.randint(1, 6)
        w = [rng.randint(-4, 4) for _ in range(m)]
        if not any(w):
            w[0] = 1
        v = [rng.randint(-4, 4) for _ in range(m)]
        if dot(project_off(v, w), w) != 0:
            fails.append((v, w))
    return _outcome(fails, instances=50)


@check("exact_linalg", "gf2_rank_bounds_and_transpose")
def _(level, rng):
    fails = []
    for _ in range(50):
        r, c = rng.randint(1, 12), rng.randint(1, 12)
        M = Gf2Matrix.from_lists([[rng.randint(0, 1) for _ in range(c)] for _ in range(r)])
        k = gf2_rank(M)
        if k > min(r, c) or k != gf2_rank(M.transpose()):
            fails.append((r, c))
    return _outcome(fails, instances=50)


@check("exact_linalg", "in_span_matches_solver")
def _(level, rng):
    fails = []
    for _ in range(50):
        m = rng.randint(1, 6)
        B = _rand_rows(rng, rng.randint(1, m), m, 2)
        v = [Fraction(rng.randint(-2, 2)) for _ in range(m)]
        if rng.random() < 0.5:
            v = [sum(Fraction(rng.randint(-2, 2)) * row[j] for row in B) for j in range(m)]
        if in_span(v, B) != Subspace.span(B, m).contains(v):
            fails.append((v, B))
    return _outcome(fails, instances=50)


# -- projective geometry -------------------------------------------------------------

@check("projective", "canonicalize_idempotent_scale_invariant")
def _(level, rng):
    fails = []
    for _ in range(50):
        v = [rng.randint(-5, 5) for _ in range(rng.randint(1, 5))]
        if not any(v):
            continue
        p = canonicalize(v)
        lam = Fraction(rng.choice([-7, -2, 1, 3]), rng.randint(1, 5))
        if canonicalize(p.rep) != p or canonicalize([lam * x for x in v]) != p:
            fails.append(v)
    return _outcome(fails)


@check("projective", "cube_size_and_rank")
def _(level, rng):
    fails = [n for n in range(1, level.max_n + 2)
             if len(generate_En(n)) != 2**n or rank_rational(generate_En(n).reps) != n + 1]
    return _outcome(fails, ns=list(range(1, level.max_n + 2)))


@check("projective", "projection_partitions_sources")
def _(level, rng):
    fails = []
    generic_ok = 0
    for H in corpus(level, rng)[:20]:
        if H.ambient_dim < 1:
            continue
        u = fixtures.random_outside_point(rng, H)
        res = project_config(H, u)
        classes = [set(c) for c in res.preimage_classes]
        union = set().union(*classes)
        if (res.image.ambient_dim != H.ambient_dim - 1 or union != set(range(len(H)))
                or sum(map(len, classes)) != len(H)):
            fails.append(H.content_hash())
        if H.ambient_dim < 2:
            continue   # any two points already span all of R^2
        g = sample_generic_point(H, rng.randrange(10**6))
        if len(project_config(H, g).image) != len(H):
            fails.append(("generic", H.content_hash()))
        else:
            generic_ok += 1
    return _outcome(fails, generic_ok=generic_ok)


@check("projective", "projection_chain_verified")
def _(level, rng):
    n = level.max_n
    chain = projection_chain(n, rng.randrange(10**6))
    return _outcome([], n=n, modes={p.k: p.mode for p in chain})


# -- lattice ---------------------------------------------------------------------------

@check("lattice", "zaslavsky_equals_deletion_restriction")
def _(level, rng):
    fails = []
    items = corpus(level, rng)
    for H in items:
        if chambers_zaslavsky(H) != chambers_deletion_restriction(H):
            fails.append(H.content_hash())
    return _outcome(fails, instances=len(items))


@check("lattice", "moebius_alternation")
def _(level, rng):
    fails = []
    for H in corpus(level, rng):
        L = build_lattice(H)
        for f in L.flats:
            mu = L.moebius[f]
            if mu == 0 or (mu > 0) != (f.dim % 2 == 0):
                fails.append((H.content_hash(), f.dim, mu))
    return _outcome(fails)


@check("lattice", "chambers_permutation_and_scaling")
def _(level, rng):
    fails = []
    for H in corpus(level, rng)[:20]:
        c = chambers_zaslavsky(H)
        P = H.reordered(_shuffled(rng, len(H)))
        if chambers_zaslavsky(P) != c:
            fails.append(H.content_hash())
        scaled = Configuration.from_vectors([[lam * x for x in r] for r in H.reps
                                             for lam in [rng.choice([-3, 2, 5])]], H.ambient_dim)
        if chambers_zaslavsky(scaled) != c:
            fails.append(("scale", H.content_hash()))
    return _outcome(fails)


@check("lattice", "moebius_top_equals_homology")
def _(level, rng):
    fails = []
    for H in corpus(level, rng):
        if H.full_span() and moebius_top_abs(H) != eta_star_via_homology(H):
            fails.append(H.content_hash())
    return _outcome(fails)


# -- homology ------------------------------------------------------------------------

@check("homology", "exact_sequence")
def _(level, rng):
    fails = []
    for H in corpus(level, rng):
        try:
            relative_ranks(H)
        except InvariantViolation as exc:
            fails.append(str(exc))
    return _outcome(fails)


@check("homology", "bridge_homology_moebius")
def _(level, rng):
    fails = []
    for H in corpus(level, rng):
        if H.full_span() and homology_rank(H, H.ambient_dim - 1) != moebius_top_abs(H):
            fails.append(H.content_hash())
    return _outcome(fails)


@check("homology", "cpi_order_invariant")
def _(level, rng):
    fails = []
    for H in corpus(level, rng):
        rel = relative_ranks(H).rank_rel
        sizes = {len(enumerate_Cpi(H, _shuffled(rng, len(H)))) for _ in range(level.orders)}
        if sizes != {rel}:
            fails.append((H.content_hash(), sorted(sizes), rel))
    return _outcome(fails, orders=level.orders)


@check("homology", "corollary_and_d_identity")
def _(level, rng):
    fails = []
    for H in corpus(level, rng):
        for w in range(len(H)):
            c, cnz, d = corollary_bound(H, w, _shuffled(rng, len(H)))
            if c > cnz + d or d != d_identity_rhs(H, w):
                fails.append((H.content_hash(), w))
    return _outcome(fails)


@check("homology", "boundary_partition")
def _(level, rng):
    fails = []
    items = [generate_En(3)] + corpus(level, rng)
    for H in items:
        w = rng.randrange(len(H))
        if not check_boundary_partition(H, order_with_first(H, w, _shuffled(rng, len(H))), w):
            fails.append((H.content_hash(), w))
    return _outcome(fails, instances=len(items))


@check("homology", "relative_rank_bound")
def _(level, rng):
    fails = []
    for H in corpus(level, rng):
        if len(H) > 10 or not H.full_span():
            continue
        holds, rel, rhs = check_relative_rank_bound(H, rng.randrange(len(H)))
        if not holds:
            fails.append((H.content_hash(), rel, str(rhs)))
    return _outcome(fails)


# -- eta -----------------------------------------------------------------------------

@check("eta", "three_way_agreement")
def _(level, rng):
    fails = []
    for H in corpus(level, rng):
        a = eta_star_via_order(H, _shuffled(rng, len(H)))
        b = eta_star_via_homology(H)
        cs = [eta_star_via_flags(H, p) for p in _probability_vectors(rng, len(H))] if H.full_span() else [0]
        if len({a, b, *cs}) != 1 or any(Fraction(c).denominator != 1 for c in cs):
            fails.append((H.content_hash(), a, b, [str(c) for c in cs]))
    return _outcome(fails)


@check("eta", "order_invariance")
def _(level, rng):
    fails = []
    for H in corpus(level, rng):
        vals = {eta_star_via_order(H, _shuffled(rng, len(H))) for _ in range(level.orders)}
        if len(vals) != 1:
            fails.append((H.content_hash(), sorted(vals)))
    return _outcome(fails)


def _small(rng, level):
    return fixtures.random_configuration(rng, min(level.max_points, 8), level.max_dim)


@check("eta", "supermodularity")
def _(level, rng):
    fails = []
    for _ in range(level.pairs):
        H = _small(rng, level)
        u = fixtures.random_outside_point(rng, H)
        v = fixtures.random_outside_point(rng, H, exclude=(u,))
        if not check_supermodular(H, u, v):
            fails.append(H.content_hash())
    return _outcome(fails, instances=level.pairs)


@check("eta", "projection_recursion")
def _(level, rng):
    fails = []
    collisions = 0
    count = max(level.pairs // 2, 1)
    for _ in range(count):
        H = _small(rng, level)
        r = check_projection_recursion(H, fixtures.random_outside_point(rng, H))
        collisions += r.collisions > 0
        if not r:
            fails.append(H.content_hash())
    return _outcome(fails, instances=count, with_collisions=collisions)


@check("eta", "binomial_upper_bound")
def _(level, rng):
    fails = []
    for H in corpus(level, rng)[:30]:
        w = fixtures.random_outside_point(rng, H)
        if eta_star_via_order(H.with_points(w)) > binom_eta_sum(H, w):
            fails.append(H.content_hash())
    return _outcome(fails)


# -- ensembles -----------------------------------------------------------------------

@check("ensembles", "delta_telescoping")
def _(level, rng):
    fails = []
    seen = []
    for n in range(1, level.max_n + 1):
        table = DeltaTable.exhaustive(n)
        table.check()
        kmax = n if n <= 3 else 3 if level.name == "quick" else 4
        for k in range(1, min(kmax, n) + 1):
            spec = gamma_spectrum(n, k, seed=rng.randrange(10**6), deltas=table)
            seen.append((n, k))
            if not telescoping_holds(spec):
                fails.append((n, k))
    return _outcome(fails, pairs=seen)


@check("ensembles", "singular_decomposition")
def _(level, rng):
    fails = []
    for n in range(1, level.singular_n):
        rep = sg.singular_exact(n + 1)
        chk = sg.check_decomposition(n, delta_exact(n, n + 1), rep)
        if not chk.holds:
            fails.append(n)
        if n + 1 <= 3 and sg.singular_raw(n + 1) != rep.singular_count:
            fails.append(("raw", n + 1))
        if n <= 3 and sg.two_close_rows_count(n) != sg.repeat_rows_closed_form(n):
            fails.append(("repeat", n))
    return _outcome(fails, ns=list(range(1, level.singular_n)))


@check("ensembles", "singular_monotone_sanity")
def _(level, rng):
    ps = {n: sg.singular_exact(n).P for n in range(2, level.singular_n + 1)}
    mono = all(ps[a] > ps[a + 1] for a in range(2, level.singular_n))
    return Outcome("pass" if mono else "flagged",
                   {"P": {n: str(p) for n, p in ps.items()}, "decreasing": mono})


@check("ensembles", "threshold_oracles_agree")
def _(level, rng):
    fails = []
    counts = {}
    for n in range(1, level.max_n + 1):
        r = th.threshold_count(n)
        counts[n] = r.oracles
        if not r.agree or not r.within_bounds:
            fails.append(n)
    return _outcome(fails, counts=counts)


@check("ensembles", "bounds_report")
def _(level, rng):
    fails = []
    out = {}
    for n in range(1, min(level.max_n, 3) + 1):
        b = th.bounds_report(n, seed=rng.randrange(10**6))
        out[n] = {"eta": b.eta_star, "count": b.count, "upper": b.schlafli_upper}
        if not b:
            fails.append(n)
    return _outcome(fails, reports=out)


@check("ensembles", "littlewood_offord_window")
def _(level, rng):
    ns = [4] if level.name == "quick" else [4, 5]
    fails = [n for n in ns if not check_LO_gap(n).holds]
    return _outcome(fails, ns=ns)


@check("ensembles", "monte_carlo_deterministic")
def _(level, rng):
    seed = rng.randrange(10**6)
    a = sg.singular_mc(2, level.mc_samples, seed)
    b = sg.singular_mc(2, level.mc_samples, seed)
    fails = []
    if a.estimate.hits != b.estimate.hits:
        fails.append("rerun differs")
    if not a.estimate.contains(Fraction(1, 2)):
        fails.append("P_2 outside interval")
    da = delta_mc(3, 4, level.mc_samples // 4, seed)
    if da.hits != delta_mc(3, 4, level.mc_samples // 4, seed).hits:
        fails.append("delta rerun differs")
    return _outcome(fails, hits=a.estimate.hits, samples=level.mc_samples)


@check("ensembles", "increment_bound_small_n")
def _(level, rng):
    rows = {}
    for n in range(2, level.max_n + 1):
        for k in range(2, n + 1):
            r = check_increment_bound(n, k)
            rows[f"{n},{k}"] = {"increment": str(r.increment), "bound": str(r.bound), "holds": r.holds}
    ok = all(v["holds"] for v in rows.values())
    return Outcome("pass" if ok else "flagged", rows)


def run_suite(level: str = "quick", seed: int = 0, only: str | None = None) -> dict:
    lv = QUICK if level == "quick" else FULL
    results = []
    for module, name, fn in CHECKS:
        if only and only not in (module, name):
            continue
        out = fn(lv, _rng(seed, name))
        results.append({"module": module, "check": name, "status": out.status,
                        "detail": out.detail})
    status = "fail" if any(r["status"] == "fail" for r in results) else "pass"
    return {"level": level, "seed": seed, "status": status, "checks": results}
