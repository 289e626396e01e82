"""Dense exact linear algebra over a prime field, on numpy int64 matrices.

Entries are reduced representatives in [0, p).  p stays below 2^15 so
products fit comfortably in int64 without intermediate overflow.
"""

from __future__ import annotations

import numpy as np


def as_matrix(rows, p):
    a = np.array(rows, dtype=np.int64) % p
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a


def rref(a, p):
    """Row-reduced echelon form; returns (matrix, pivot column list)."""
    a = a % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a, p):
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(rref(a.copy(), p)[1])


def nullspace(a, p):
    """Basis of the right kernel, as rows of a matrix."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    if m == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(a.copy(), p)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, c]) % p
    return basis


def solve(a, b, p):
    """One solution of a x = b, or None if inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64) % p
    m, n = a.shape
    aug = np.hstack([a % p, b.reshape(m, 1)])
    r, pivots = rref(aug, p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, n]
    return x
