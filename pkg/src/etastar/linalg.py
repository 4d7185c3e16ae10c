"""Exact linear algebra over Q (fraction-free) and over GF(2).

Vectors are plain sequences of ``int`` or :class:`fractions.Fraction`.
Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Number = int | Fraction


class DimensionMismatch(ValueError):
    pass


class ZeroDirection(ValueError):
    pass


def _check_widths(rows: Sequence[Sequence[Number]], width: int | None = None) -> int | None:
    for r in rows:
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise DimensionMismatch(f"row of length {len(r)} in a matrix of width {width}")
    return width


def integer_row(v: Sequence[Number]) -> list[int]:
    """Scale ``v`` by the lcm of its denominators; the result is an integer row."""
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in v]
    return [int(x * den) for x in v]


def primitive(v: Sequence[Number]) -> tuple[int, ...]:
    """Integer multiple of ``v`` with coprime entries (sign left untouched)."""
    row = integer_row(v)
    g = 0
    for x in row:
        g = gcd(g, x)
    if g <= 1:
        return tuple(row)
    return tuple(x // g for x in row)


def _bareiss_rank(m: list[list[int]]) -> int:
    # In-place fraction-free elimination; every division below is exact.
    nrows = len(m)
    if nrows == 0:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if m[r][c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[piv], m[rank] = m[rank], m[piv]
        p = m[rank][c]
        prow = m[rank]
        for r in range(rank + 1, nrows):
            row = m[r]
            a = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - a * prow[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def rank_rational(rows: Sequence[Sequence[Number]]) -> int:
    """Exact rank of a matrix given by rows; the empty matrix has rank 0."""
    rows = list(rows)
    if not rows:
        return 0
    _check_widths(rows)
    return _bareiss_rank([integer_row(r) for r in rows])


def in_span(v: Sequence[Number], basis: Sequence[Sequence[Number]]) -> bool:
    basis = list(basis)
    _check_widths(basis, len(v))
    if not any(v):
        return True
    return rank_rational(basis + [v]) == rank_rational(basis)


def dot(u: Sequence[Number], v: Sequence[Number]) -> Number:
    if len(u) != len(v):
        raise DimensionMismatch(f"lengths {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def project_off(v: Sequence[Number], w: Sequence[Number]) -> tuple[Fraction, ...]:
    """Orthogonal projection of ``v`` onto the complement of the line through ``w``."""
    if len(v) != len(w):
        raise DimensionMismatch(f"lengths {len(v)} and {len(w)}")
    ww = dot(w, w)
    if ww == 0:
        raise ZeroDirection("cannot project along the zero vector")
    beta = Fraction(dot(v, w)) / ww
    return tuple(Fraction(a) - beta * b for a, b in zip(v, w))


def rref(rows: Sequence[Sequence[Number]]) -> tuple[list[tuple[Fraction, ...]], list[int]]:
    """Reduced row echelon form over Q. Returns the nonzero rows and pivot columns."""
    rows = list(rows)
    width = _check_widths(rows)
    if width is None:
        return [], []
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def canonical_basis(rows: Sequence[Sequence[Number]]) -> tuple[tuple[int, ...], ...]:
    """Hashable canonical form of ``span(rows)``: RREF with each row made primitive."""
    basis, _ = rref(rows)
    return tuple(primitive(b) for b in basis)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^d kept in reduced echelon form for fast membership tests."""

    dim_ambient: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, rows: Iterable[Sequence[Number]], dim_ambient: int) -> "Subspace":
        rows = list(rows)
        _check_widths(rows, dim_ambient)
        basis, pivots = rref(rows)
        return cls(dim_ambient, tuple(basis), tuple(pivots))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Number]) -> bool:
        if len(v) != self.dim_ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.dim_ambient}")
        r = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            f = r[p]
            if f:
                r = [a - f * b for a, b in zip(r, row)]
        return not any(r)

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(primitive(b) for b in self.basis)


def nullspace(rows: Sequence[Sequence[Number]], width: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of ``{x : row . x = 0 for every row}``."""
    _check_widths(rows, width)
    basis, pivots = rref(rows)
    free = [c for c in range(width) if c not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * width
        x[f] = Fraction(1)
        for row, p in zip(basis, pivots):
            x[p] = -row[f]
        out.append(primitive(x))
    return out


def orthogonal_complement_basis(u: Sequence[Number]) -> list[tuple[int, ...]]:
    """Pairwise orthogonal primitive integer basis of the hyperplane ``u``-perp."""
    if not any(u):
        raise ZeroDirection("zero normal")
    raw = nullspace([u], len(u))
    ortho: list[tuple[Fraction, ...]] = []
    for v in raw:
        x = [Fraction(a) for a in v]
        for e in ortho:
            c = dot(x, e) / dot(e, e)
            x = [a - c * b for a, b in zip(x, e)]
        ortho.append(tuple(x))
    return [primitive(e) for e in ortho]


@dataclass
class Gf2Matrix:
    """Dense GF(2) matrix; row ``i`` is an int whose bit ``j`` is entry ``(i, j)``."""

    ncols: int
    rows: list[int] = field(default_factory=list)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "Gf2Matrix":
        rows = list(rows)
        width = _check_widths(rows) or 0
        bits = []
        for r in rows:
            x = 0
            for j, b in enumerate(r):
                if b & 1:
                    x |= 1 << j
            bits.append(x)
        return cls(width, bits)

    def transpose(self) -> "Gf2Matrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    cols[j] |= 1 << i
                r >>= 1
                j += 1
        return Gf2Matrix(self.nrows, cols)


def gf2_rank_rows(rows: Iterable[int]) -> int:
    """Rank of bit-rows over GF(2), by reduction against a pivot table."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank


def gf2_rank(m: Gf2Matrix) -> int:
    return gf2_rank_rows(m.rows)
