# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled modular elimination kernels.

Both routines work in place on a C-contiguous int64 matrix whose entries
lie in [0, p). The prime must be below 2**31 so that a product of two
residues fits in a signed 64-bit integer.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


cdef inline int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, nt = 1, r = p, nr = a, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef inline int64_t _fma_mod(int64_t x, int64_t f, int64_t y, int64_t p, double pinv) nogil:
    # (x + f*y) mod p with the quotient estimated in floating point; the
    # estimate is off by at most one so a single correction step suffices
    cdef int64_t s = x + f * y
    cdef int64_t q = <int64_t>(<double>s * pinv)
    s -= q * p
    if s < 0:
        s += p
    elif s >= p:
        s -= p
    return s


cdef Py_ssize_t _eliminate(int64_t[:, ::1] A, int64_t p, bint reduced, Py_ssize_t* pivots) nogil:
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, t, piv, nnz
    cdef int64_t inv, f, x
    cdef double pinv = 1.0 / <double>p
    cdef int64_t* rowr
    cdef int64_t* rowi
    cdef Py_ssize_t* nzcols = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                x = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = x
        rowr = &A[r, 0]
        inv = _inv(rowr[c], p)
        nnz = 0
        for j in range(c, n):
            if rowr[j] != 0:
                if inv != 1:
                    rowr[j] = (rowr[j] * inv) % p
                nzcols[nnz] = j
                nnz += 1
        for i in range(r + 1 if not reduced else 0, m):
            if i == r:
                continue
            rowi = &A[i, 0]
            x = rowi[c]
            if x == 0:
                continue
            f = p - x
            if 4 * nnz > n - c:
                # dense pivot row: contiguous sweep vectorizes better
                for j in range(c, n):
                    rowi[j] = _fma_mod(rowi[j], f, rowr[j], p, pinv)
            else:
                for t in range(nnz):
                    j = nzcols[t]
                    rowi[j] = _fma_mod(rowi[j], f, rowr[j], p, pinv)
        pivots[r] = c
        r += 1
    free(nzcols)
    return r


def rank_modp(int64_t[:, ::1] A, int64_t p):
    """Rank of A over GF(p); A is overwritten with an echelon form."""
    cdef Py_ssize_t k = min(A.shape[0], A.shape[1])
    cdef Py_ssize_t* pivots = <Py_ssize_t*> malloc((k + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t r
    with nogil:
        r = _eliminate(A, p, False, pivots)
    free(pivots)
    return r


def rref_modp(int64_t[:, ::1] A, int64_t p):
    """Reduced row echelon form over GF(p) in place.

    Returns (rank, pivot_columns).
    """
    cdef Py_ssize_t k = min(A.shape[0], A.shape[1])
    cdef Py_ssize_t* pivots = <Py_ssize_t*> malloc((k + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t r, t
    with nogil:
        r = _eliminate(A, p, True, pivots)
    out = [pivots[t] for t in range(r)]
    free(pivots)
    return r, out
