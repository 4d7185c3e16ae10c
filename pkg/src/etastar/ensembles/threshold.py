"""Threshold Boolean functions: chamber counts, a separability oracle, bounds.

A function f on {+-1}^n is a threshold function when some weight vector a
satisfies  a.(1,x) >= 0  exactly where f(x) = 1. Those weight vectors form
one chamber of the arrangement of hyperplanes orthogonal to the points (1,x),
so P(2,n) is the chamber count of <E_n>.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import BudgetExhausted
from ..eta import check_projection_recursion, eta_star_via_order
from ..lattice import chambers_deletion_restriction, chambers_zaslavsky
from ..projective import generate_En, project_config, sample_generic_point
from .delta import delta_exact

SEPARABILITY_MAX_N = 3
LATTICE_MAX_N = 4


@dataclass(frozen=True)
class Ineq:
    """coef . a > 0 (strict) or coef . a >= 0."""

    coef: tuple[int, ...]
    strict: bool


def _normalize(coef: tuple[int, ...]) -> tuple[int, ...]:
    g = math.gcd(*coef)
    return coef if g in (0, 1) else tuple(c // g for c in coef)


def _eliminate(system: list[Ineq], j: int) -> list[Ineq]:
    pos = [q for q in system if q.coef[j] > 0]
    neg = [q for q in system if q.coef[j] < 0]
    out: dict[tuple[int, ...], bool] = {}
    for q in system:
        if q.coef[j] == 0:
            out[q.coef] = out.get(q.coef, False) or q.strict
    for p in pos:
        for m in neg:
            lp, lm = -m.coef[j], p.coef[j]
            coef = _normalize(tuple(lp * a + lm * b for a, b in zip(p.coef, m.coef)))
            out[coef] = out.get(coef, False) or p.strict or m.strict
    return [Ineq(c, s) for c, s in out.items()]


def fm_feasible(system: list[Ineq]) -> bool:
    """Fourier-Motzkin feasibility of a homogeneous system of (strict) inequalities.

    Strictness is carried as a flag: a combination is strict when any of its
    parents is. After eliminating every variable the system is infeasible iff
    some surviving row reads 0 > 0 (rows 0 >= 0 are vacuous).
    """
    if not system:
        return True
    width = len(system[0].coef)
    cur = [Ineq(_normalize(q.coef), q.strict) for q in system]
    for j in range(width):
        cur = _eliminate(cur, j)
    return not any(q.strict for q in cur)


def is_threshold(values: dict[tuple[int, ...], int]) -> bool:
    """``values`` maps each x in {+-1}^n to f(x) in {+-1}."""
    system = []
    for x, fx in values.items():
        row = (1,) + tuple(x)
        if fx == 1:
            system.append(Ineq(row, False))
        else:
            system.append(Ineq(tuple(-c for c in row), True))
    return fm_feasible(system)


def separability_count(n: int) -> int:
    """Count threshold functions by testing all 2^(2^n) Boolean functions."""
    if n > SEPARABILITY_MAX_N:
        raise BudgetExhausted(f"function enumeration limited to n <= {SEPARABILITY_MAX_N}")
    cube = list(itertools.product((1, -1), repeat=n))
    return sum(is_threshold(dict(zip(cube, signs)))
               for signs in itertools.product((1, -1), repeat=len(cube)))


def schlafli_upper(n: int) -> int:
    return 2 * sum(math.comb(2**n - 1, i) for i in range(n + 1))


def asym_main_term(n: int) -> int:
    return 2 * math.comb(2**n - 1, n)


def lower_bound_leading(n: int) -> Fraction:
    """2 [1 - n^2/2^n] C(2^n - 1, n): the displayed lower bound with its o-term dropped."""
    return 2 * (1 - Fraction(n * n, 2**n)) * math.comb(2**n - 1, n)


@dataclass(frozen=True)
class ThresholdReport:
    n: int
    count: int
    schlafli_upper: int
    lower_bound: Fraction
    ratio_to_asym: Fraction
    oracles: dict

    @property
    def agree(self) -> bool:
        return len(set(self.oracles.values())) == 1

    @property
    def within_bounds(self) -> bool:
        return self.lower_bound <= self.count <= self.schlafli_upper


def threshold_count(n: int, cross_check: bool = True) -> ThresholdReport:
    if n < 1:
        raise ValueError("n must be positive")
    if n > LATTICE_MAX_N:
        raise BudgetExhausted(f"lattice build limited to n <= {LATTICE_MAX_N}")
    E = generate_En(n)
    oracles = {"zaslavsky": chambers_zaslavsky(E)}
    if cross_check:
        oracles["deletion_restriction"] = chambers_deletion_restriction(E)
        if n <= SEPARABILITY_MAX_N:
            oracles["separability"] = separability_count(n)
    count = oracles["zaslavsky"]
    return ThresholdReport(n, count, schlafli_upper(n), lower_bound_leading(n),
                           Fraction(count, asym_main_term(n)), oracles)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    eta_star: int
    count: int
    schlafli_upper: int
    ratio_to_asym: Fraction
    holds: bool
    recursion_holds: bool | None = None
    projected_eta: int | None = None
    projected_cap: Fraction | None = None

    def __bool__(self) -> bool:
        return self.holds


def bounds_report(n: int, seed: int = 0, with_projection: bool | None = None) -> BoundsReport:
    """Check 2 eta*(E_n) <= P(2,n) <= Schlafli bound.

    With ``with_projection`` (default for n <= 3) a generic direction w is
    added to E_n and the projection identity plus the cap
    eta*(E_n projected along w) <= (1 - delta_{n,n}) C(2^n - 1, n - 1)
    are checked as well.
    """
    E = generate_En(n)
    rep = threshold_count(n, cross_check=False)
    eta = eta_star_via_order(E)
    holds = 2 * eta <= rep.count <= rep.schlafli_upper
    rec = proj = cap = None
    if with_projection is None:
        with_projection = n <= 3
    if with_projection and n >= 2:
        w = sample_generic_point(E, seed)
        check = check_projection_recursion(E, w)
        rec = check.holds
        proj = check.eta_image
        cap = (1 - delta_exact(n, n)) * math.comb(2**n - 1, n - 1)
        holds = holds and rec and proj <= cap
    return BoundsReport(n, eta, rep.count, rep.schlafli_upper, rep.ratio_to_asym,
                        holds, rec, proj, cap)
