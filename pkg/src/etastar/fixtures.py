"""Named configurations and seeded random configurations used by tests and the CLI."""
from __future__ import annotations

import random

from .errors import ConfigurationError
from .projective import Configuration, ProjectivePoint, canonicalize, generate_En


def coordinate_simplex(n: int) -> Configuration:
    """The n+1 coordinate points of RP^n (normals of the coordinate hyperplanes)."""
    return Configuration.from_vectors(
        [[int(i == j) for j in range(n + 1)] for i in range(n + 1)], n)


def three_point_line() -> Configuration:
    """Three collinear points of RP^2 plus one point off their line (spanning)."""
    return Configuration.from_vectors([(1, 0, 0), (1, 1, 0), (1, 2, 0), (0, 0, 1)], 2)


def three_point_line_bare() -> Configuration:
    """Just the three collinear points; their span is deficient."""
    return Configuration.from_vectors([(1, 0, 0), (1, 1, 0), (1, 2, 0)], 2)


def named(name: str) -> Configuration:
    key = name.strip().lower()
    if key.startswith("e") and key[1:].isdigit():
        return generate_En(int(key[1:]))
    if key.startswith("simplex") and key[7:].isdigit():
        return coordinate_simplex(int(key[7:]))
    if key in ("line3", "three-point-line"):
        return three_point_line()
    if key == "line3-bare":
        return three_point_line_bare()
    raise ConfigurationError(f"unknown configuration {name!r}")


NAMED = ["E1", "E2", "E3", "E4", "E5", "simplex1", "simplex2", "simplex3", "simplex4",
         "line3", "line3-bare"]


def random_configuration(rng: random.Random, max_points: int = 10, max_dim: int = 4,
                         coord_bound: int = 2, full_span: bool = True,
                         min_points: int = 1) -> Configuration:
    """Random distinct points with small integer coordinates (many degeneracies).

    With ``full_span`` the draw is repeated until the points span R^(n+1).
    """
    while True:
        n = rng.randint(1, max_dim)
        target = rng.randint(max(min_points, n + 1 if full_span else 1), max(max_points, n + 1))
        pts = []
        tries = 0
        while len(pts) < target and tries < 50 * target:
            tries += 1
            v = [rng.randint(-coord_bound, coord_bound) for _ in range(n + 1)]
            if not any(v):
                continue
            p = canonicalize(v)
            if p not in pts:
                pts.append(p)
        H = Configuration(n, tuple(pts))
        if len(H) >= min_points and (not full_span or H.full_span()):
            return H


def random_outside_point(rng: random.Random, H: Configuration, coord_bound: int = 2,
                         exclude=()) -> ProjectivePoint:
    """Random point not in ``H`` or ``exclude``.

    The coordinate box widens every 100 misses, since a small box can be
    exhausted (RP^1 has only eight points with coordinates in [-2, 2]).
    """
    misses = 0
    while True:
        b = coord_bound + misses // 100
        v = [rng.randint(-b, b) for _ in range(H.ambient_dim + 1)]
        if not any(v):
            continue
        p = canonicalize(v)
        if p not in H and p not in exclude:
            return p
        misses += 1
