"""Vectorized exact determinants of small integer matrices (fraction-free, int64).

All intermediate values of Bareiss elimination are minors of the input, so
the arithmetic is exact as long as products of two such minors fit in int64.
"""
from __future__ import annotations

import math

import numpy as np


def hadamard_safe(n: int, max_abs: int) -> bool:
    """True when products of two minors of an n x n matrix with entries <= max_abs fit in int64."""
    if n == 0:
        return True
    bound = (math.sqrt(n) * max_abs) ** n
    return 2 * bound * bound < 2.0**62


def batch_det(A: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack of square integer matrices, shape (B, n, n)."""
    A = np.array(A, dtype=np.int64, copy=True)
    B, n, m = A.shape
    if n != m:
        raise ValueError("square matrices required")
    if n == 0:
        return np.ones(B, dtype=np.int64)
    if not hadamard_safe(n, int(np.abs(A).max(initial=0))):
        raise OverflowError("entries too large for exact int64 elimination")
    idx = np.arange(B)
    sign = np.ones(B, dtype=np.int64)
    zero = np.zeros(B, dtype=bool)
    prev = np.ones(B, dtype=np.int64)
    for k in range(n):
        nz = A[:, k:, k] != 0
        has = nz.any(axis=1)
        zero |= ~has
        piv = np.argmax(nz, axis=1) + k
        swap = piv != k
        sign[swap] = -sign[swap]
        row_k = A[idx, k].copy()
        A[idx, k] = A[idx, piv]
        A[idx, piv] = row_k
        p = A[:, k, k].copy()
        p[~has] = 1
        if k + 1 < n:
            lower = A[:, k + 1:, k:k + 1]
            A[:, k + 1:, k + 1:] = (p[:, None, None] * A[:, k + 1:, k + 1:]
                                    - lower * A[:, k:k + 1, k + 1:]) // prev[:, None, None]
            A[:, k + 1:, k] = 0
        prev = p
    det = sign * A[:, n - 1, n - 1]
    det[zero] = 0
    return det


def batch_singular(A: np.ndarray) -> np.ndarray:
    return batch_det(A) == 0


def hyperplane_normals(A: np.ndarray) -> np.ndarray:
    """Generalized cross products of stacks of n-1 vectors in Z^n, shape (B, n-1, n) -> (B, n).

    Entry j is (-1)^j times the minor with column j deleted; the result is zero
    exactly when the rows are dependent, and is orthogonal to each row.
    """
    A = np.asarray(A, dtype=np.int64)
    B, r, n = A.shape
    if r != n - 1:
        raise ValueError("need n-1 rows of length n")
    out = np.empty((B, n), dtype=np.int64)
    for j in range(n):
        cols = [c for c in range(n) if c != j]
        out[:, j] = (-1) ** j * batch_det(A[:, :, cols])
    return out
