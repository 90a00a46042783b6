"""Exact dense linear algebra: row reduction and ranks mod p (numpy) and
over the rationals (Fraction rows).

The mod-p routines keep entries reduced to ``[0, p)`` after every pivot so
int64 intermediates never overflow (products stay below p**2 < 2**31 for the
default prime).  Large rank computations store int32 and upcast per chunk.
"""

from fractions import Fraction

import numpy as np

__all__ = ["rref_mod", "rank_mod", "rref_fraction"]


def rref_mod(A, p):
    """Reduced row echelon form of int array A mod p.

    Returns (R, pivot_columns).  R is a fresh int64 array; zero rows are
    kept in place (callers slice by the number of pivots if needed).
    """
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod(A, p, chunk=8192):
    """Rank of int array A mod p by forward elimination.

    Stores int32 to halve memory on large inputs and upcasts per row chunk
    for the elimination update.
    """
    A = np.ascontiguousarray(np.asarray(A) % p, dtype=np.int32)
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        pivrow = (A[r].astype(np.int64) * inv) % p
        A[r] = pivrow.astype(np.int32)
        lo = r + 1
        while lo < m:
            hi = min(lo + chunk, m)
            blockcol = A[lo:hi, c]
            rows = np.nonzero(blockcol)[0]
            if rows.size:
                block = A[lo:hi][rows].astype(np.int64)
                block -= np.outer(blockcol[rows].astype(np.int64), pivrow)
                block %= p
                A[lo:hi][rows] = block.astype(np.int32)
            lo = hi
        r += 1
    return r


def rref_fraction(rows):
    """Reduced row echelon form over QQ for a list of Fraction lists.

    Returns (reduced nonzero rows, pivot columns).
    """
    rows = [list(map(Fraction, r)) for r in rows]
    if not rows:
        return [], []
    n = len(rows[0])
    r = 0
    pivots = []
    for c in range(n):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots
