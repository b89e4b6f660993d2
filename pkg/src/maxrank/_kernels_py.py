"""Pure-Python (numpy) versions of the modular elimination kernels.

Same contract as the compiled ``_kernels`` module: in-place on a
C-contiguous int64 array with entries in [0, p), p < 2**31.
"""
import numpy as np


def _eliminate(A, p, reduced):
    m, n = A.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv], c:] = A[[piv, r], c:]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r, c:] = (A[r, c:] * inv) % p
        cols = c + np.flatnonzero(A[r, c:])
        lo = 0 if reduced else r + 1
        rows = lo + np.flatnonzero(A[lo:, c])
        rows = rows[rows != r]
        if rows.size:
            f = (p - A[rows, c])[:, None]
            sub = A[np.ix_(rows, cols)]
            A[np.ix_(rows, cols)] = (sub + f * A[r, cols][None, :]) % p
        pivots.append(c)
        r += 1
    return r, pivots


def rank_modp(A, p):
    """Rank of A over GF(p); A is overwritten with an echelon form."""
    return _eliminate(A, int(p), False)[0]


def rref_modp(A, p):
    """Reduced row echelon form over GF(p) in place; returns (rank, pivots)."""
    return _eliminate(A, int(p), True)
