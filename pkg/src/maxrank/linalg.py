"""Exact rank over the rationals for integer matrices.

Three routes, all unconditional in characteristic zero:

* ``rank_exact``: fraction-free elimination on sparse integer rows. Each
  update ``row_i <- a_p * row_i - a_i * row_p`` keeps entries integral and
  the row is then divided by its content. Without the content step entries
  could grow up to the Hadamard bound of the leading minors; with it they
  stay small on the 0/1 matrices this package produces, but nothing here
  relies on that.
* ``rank_modular``: rank modulo a few large primes. Any rank mod p is a
  lower bound for the rank over Q, so full rank mod p certifies full rank.
* ``kernel certificate``: when a large matrix is rank deficient mod p, the
  modular nullspace is lifted to rational vectors by CRT and rational
  reconstruction, and the lifted vectors are checked against the matrix in
  exact integer arithmetic. ``c - r`` verified independent kernel vectors
  bound the rank from above by ``r``, matching the modular lower bound.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

from .kernels import rank_modp, rref_modp
from .matrices import LabeledMatrix

log = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
DEFAULT_PRIME_COUNT = 3
# below this smaller dimension deficient matrices go through rank_exact
EXACT_LIMIT = 160
MAX_LIFT_PRIMES = 12

PRIME_LO = 2**30
PRIME_HI = 2**31


@lru_cache(maxsize=64)
def primes_for_seed(seed: int, count: int) -> Tuple[int, ...]:
    """``count`` distinct primes in [2^30, 2^31) drawn from a seeded RNG."""
    from sympy import isprime

    rng = random.Random(seed)
    out: List[int] = []
    while len(out) < count:
        c = rng.randrange(PRIME_LO, PRIME_HI) | 1
        if c not in out and isprime(c):
            out.append(c)
    return tuple(out)


# exact elimination ---------------------------------------------------------


def _content(row: dict) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def rank_exact(M: LabeledMatrix) -> int:
    """Rank over Q by fraction-free sparse elimination (see module doc)."""
    rows = [r for r in M.row_dicts() if r]
    if not rows:
        return 0
    for r in rows:
        g = _content(r)
        if g > 1:
            for j in r:
                r[j] //= g
    ncols = M.shape[1]
    rank = 0
    remaining = rows
    for c in range(ncols):
        if not remaining:
            break
        holders = [r for r in remaining if c in r]
        if not holders:
            continue
        # smallest pivot magnitude, then sparsest row
        piv = min(holders, key=lambda r: (abs(r[c]), len(r)))
        a = piv[c]
        nxt = []
        for r in remaining:
            if r is piv:
                continue
            b = r.get(c)
            if b:
                g = gcd(a, b)
                sa, sb = a // g, b // g
                new = {}
                for j, v in r.items():
                    new[j] = sa * v
                for j, v in piv.items():
                    w = new.get(j, 0) - sb * v
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
                if new:
                    g2 = _content(new)
                    if g2 > 1:
                        for j in new:
                            new[j] //= g2
                    nxt.append(new)
            else:
                nxt.append(r)
        remaining = nxt
        rank += 1
    return rank


def det_exact(M: LabeledMatrix) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    m, n = M.shape
    if m != n:
        raise ValueError(f"determinant of a non-square {m}x{n} matrix")
    if n == 0:
        return 1
    a = M.dense()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


# modular ranks ---------------------------------------------------------------


def rank_mod_prime(M: LabeledMatrix, p: int) -> int:
    if 0 in M.shape:
        return 0
    A = M if M.shape[0] <= M.shape[1] else M.transpose()
    return int(rank_modp(A.to_modp(p), p))


def rank_modular(M: LabeledMatrix, prime_count: int = DEFAULT_PRIME_COUNT,
                 seed: int = DEFAULT_SEED) -> Tuple[int, bool]:
    """Max of ranks modulo ``prime_count`` random primes, and whether that
    equals min(rows, cols), which certifies the rank over Q."""
    if prime_count < 1:
        raise ValueError("prime_count must be >= 1")
    full = min(M.shape)
    best = 0
    for p in primes_for_seed(seed, prime_count):
        best = max(best, rank_mod_prime(M, p))
        if best == full:
            break
    return best, best == full


# kernel certificates --------------------------------------------------------------


def _rational_reconstruct(a: int, m: int) -> Optional[Tuple[int, int]]:
    """(num, den) with num/den == a mod m and |num|, den <= sqrt(m/2)."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if gcd(r1, t1) != 1:
        return None
    return r1, t1


def _lift_vector(residues: Sequence[int], modulus: int) -> Optional[List[int]]:
    """Lift residues to a primitive integer vector, or None if reconstruction fails."""
    bound = isqrt(modulus // 2)
    den = 1
    nums: List[Tuple[int, int]] = []
    for a in residues:
        # try with the running denominator first; most entries come out integral
        x = (a * den) % modulus
        if x <= bound:
            nums.append((x, den))
            continue
        if modulus - x <= bound:
            nums.append((x - modulus, den))
            continue
        rr = _rational_reconstruct(x, modulus)
        if rr is None:
            return None
        num, extra = rr
        den *= extra
        nums.append((num, den))
    out = [num * (den // d) for num, d in nums]
    g = 0
    for v in out:
        g = gcd(g, v)
    return [v // g for v in out] if g > 1 else out


@dataclass
class _KernelState:
    pivots: List[int]
    free: List[int]
    residues: List[List[int]]
    modulus: int


def kernel_certificate(M: LabeledMatrix, r: int, primes: Sequence[int]) -> Optional[List[List[int]]]:
    """Integer basis of ker(M) with ``ncols - r`` vectors, exactly verified.

    Returns None when the lift does not verify within the given primes.
    """
    ncols = M.shape[1]
    need = ncols - r
    if need <= 0:
        return []
    state: Optional[_KernelState] = None
    for p in primes:
        A = M.to_modp(p)
        rank, pivots = rref_modp(A, p)
        if rank != r:
            continue
        pivots = list(pivots)
        if state is None:
            piv_set = set(pivots)
            free = [j for j in range(ncols) if j not in piv_set]
            state = _KernelState(pivots, free, [[] for _ in free], 1)
        elif pivots != state.pivots:
            continue
        # kernel vector for free column f: 1 at f, -R[t, f] at pivot column t
        block = A[:rank, state.free]
        new_mod = state.modulus * p
        for idx, f in enumerate(state.free):
            col = [(-int(x)) % p for x in block[:, idx]]
            if state.modulus == 1:
                state.residues[idx] = col
            else:
                # incremental CRT
                m0 = state.modulus
                inv = pow(m0, -1, p)
                state.residues[idx] = [
                    (old + m0 * (((new - old) * inv) % p)) % new_mod
                    for old, new in zip(state.residues[idx], col)
                ]
        state.modulus = new_mod
        vectors = []
        ok = True
        for idx, f in enumerate(state.free):
            lifted = _lift_vector([1] + state.residues[idx], state.modulus)
            if lifted is None:
                ok = False
                break
            v = [0] * ncols
            v[f] = lifted[0]
            for t, j in enumerate(state.pivots):
                v[j] = lifted[t + 1]
            if any(M.matvec(v)):
                ok = False
                break
            vectors.append(v)
        if ok:
            return vectors
    return None


@dataclass(frozen=True)
class RankResult:
    rank: int
    provenance: str  # "modular-certified", "exact-elimination", "kernel-certificate", "empty"
    modular_rank: int


def certified_rank(M: LabeledMatrix, *, seed: int = DEFAULT_SEED,
                   prime_count: int = DEFAULT_PRIME_COUNT,
                   exact_limit: int = EXACT_LIMIT) -> RankResult:
    """Rank over Q with a record of how it was certified."""
    m, n = M.shape
    if m == 0 or n == 0 or not M.entries:
        return RankResult(0, "empty", 0)
    r, certified = rank_modular(M, prime_count, seed)
    if certified:
        return RankResult(r, "modular-certified", r)
    if min(m, n) <= exact_limit:
        ex = rank_exact(M)
        if ex < r:
            raise ArithmeticError(f"exact rank {ex} below modular rank {r}")
        return RankResult(ex, "exact-elimination", r)
    # certify the smaller of the two kernels
    B = M if n - r <= m - r else M.transpose()
    lift_primes = primes_for_seed(seed, MAX_LIFT_PRIMES)
    vecs = kernel_certificate(B, r, lift_primes)
    if vecs is not None:
        return RankResult(r, "kernel-certificate", r)
    log.warning("kernel lift failed for %dx%d matrix; falling back to exact elimination", m, n)
    ex = rank_exact(M)
    return RankResult(ex, "exact-elimination", r)
