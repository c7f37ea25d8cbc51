"""
Exact linear algebra — Gaussian elimination over Scalar.
Matrices are numpy object arrays whose entries are Scalars; nothing here
ever touches floating point.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from engines.algebra.scalars import Scalar

logger = logging.getLogger(__name__)


def as_matrix(rows: Sequence[Sequence]) -> np.ndarray:
    """Build an object matrix of Scalars from nested sequences."""
    rows = [list(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if n else 0
    out = np.empty((n, m), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != m:
            raise ValueError("Ragged matrix rows")
        for j, x in enumerate(row):
            out[i, j] = Scalar(x)
    return out


def zeros(n: int, m: int) -> np.ndarray:
    out = np.empty((n, m), dtype=object)
    out.fill(Scalar(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Scalar(1)
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two Scalar matrices (handles empty inner dimension)."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"Shape mismatch {a.shape} x {b.shape}")
    out = zeros(a.shape[0], b.shape[1])
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = Scalar(0)
            for k in range(a.shape[1]):
                x = a[i, k]
                if x:
                    y = b[k, j]
                    if y:
                        acc = acc + x * y
            out[i, j] = acc
    return out


def scale(a: np.ndarray, c) -> np.ndarray:
    out = zeros(*a.shape)
    for idx, x in np.ndenumerate(a):
        out[idx] = x * c
    return out


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(Scalar(x) == Scalar(y) for x, y in zip(a.flat, b.flat))


def is_zero(a: np.ndarray) -> bool:
    return all(not x for x in a.flat)


def trace(a: np.ndarray) -> Scalar:
    total = Scalar(0)
    for i in range(min(a.shape)):
        total = total + a[i, i]
    return total


def row_reduce(a: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form.

    Returns:
        (rref, pivot_columns)
    """
    m = np.array(a, dtype=object, copy=True)
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot = next((i for i in range(r, rows) if m[i, c]), None)
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        inv = Scalar(m[r, c]).inverse()
        for j in range(c, cols):
            m[r, j] = m[r, j] * inv
        for i in range(rows):
            if i != r and m[i, c]:
                f = m[i, c]
                for j in range(c, cols):
                    if m[r, j]:
                        m[i, j] = m[i, j] - f * m[r, j]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray) -> int:
    return len(row_reduce(a)[1])


def nullspace(a: np.ndarray) -> List[np.ndarray]:
    """Basis of {x : a·x = 0} as column vectors (1-d object arrays)."""
    rref, pivots = row_reduce(a)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.empty(cols, dtype=object)
        v.fill(Scalar(0))
        v[f] = Scalar(1)
        for row, p in enumerate(pivots):
            v[p] = -rref[row, f]
        basis.append(v)
    return basis


def solve(a: np.ndarray, b: Sequence) -> Optional[np.ndarray]:
    """
    One solution x of a·x = b, free variables set to zero.

    Returns None when the system is inconsistent.
    """
    rows, cols = a.shape
    aug = zeros(rows, cols + 1)
    aug[:, :cols] = a
    for i in range(rows):
        aug[i, cols] = Scalar(b[i])
    rref, pivots = row_reduce(aug)
    if cols in pivots:
        return None
    x = np.empty(cols, dtype=object)
    x.fill(Scalar(0))
    for row, p in enumerate(pivots):
        x[p] = rref[row, cols]
    return x


def inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("Only square matrices have inverses")
    aug = zeros(n, 2 * n)
    aug[:, :n] = a
    aug[:, n:] = identity(n)
    rref, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("Matrix is singular")
    return rref[:, n:]
