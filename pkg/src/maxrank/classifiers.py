"""Closed-form max-rank criteria.

Each classifier returns a :class:`Verdict` whose ``source`` names the
criterion it applied. One-sided failure criteria return NotDetermined
outside their range rather than MaxRank.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb, gcd
from typing import Dict, Sequence

from .matrices import LabeledMatrix
from .sympoly import Partition, is_reducible_schur, schur_gcd


class Status(str, enum.Enum):
    MAX_RANK = "MaxRank"
    FAILS = "Fails"
    TRIVIALLY_MAX_RANK = "TriviallyMaxRank"
    TRIVIALLY_FAILS = "TriviallyFails"
    CONJ_MAX_RANK = "ConjecturalMaxRank"
    CONJ_FAILS = "ConjecturalFails"
    NOT_DETERMINED = "NotDetermined"

    def predicts(self):
        """True/False for a max-rank prediction, None when silent."""
        if self in (Status.MAX_RANK, Status.TRIVIALLY_MAX_RANK, Status.CONJ_MAX_RANK):
            return True
        if self in (Status.FAILS, Status.TRIVIALLY_FAILS, Status.CONJ_FAILS):
            return False
        return None


@dataclass(frozen=True)
class Verdict:
    status: Status
    source: str
    details: Dict = field(default_factory=dict, compare=False)

    def as_dict(self):
        return {"status": self.status.value, "source": self.source, **({"details": self.details} if self.details else {})}


# source tags, one per criterion
SRC_TRIVIAL = "degree-range"
SRC_LEFSCHETZ = "strong-lefschetz"
SRC_POWER_SUM = "power-sum-kdegree-criterion"
SRC_POWER_SUM_POWER = "power-sum-power-criterion"
SRC_TOEPLITZ = "toeplitz-determinant"
SRC_SCHUR2 = "schur-two-variables"
SRC_H2 = "complete-two-variables"
SRC_SCHUR_REDUCIBLE = "reducible-schur-kernel"
SRC_E_DEGREE_D = "elementary-inverse-system-witness"
SRC_H_DEGREE_D = "complete-inverse-system-witness"
SRC_CONJ_E = "conjecture-elementary-degree-d"
SRC_CONJ_H = "conjecture-complete-degree-d"
SRC_CONJ_SCHUR3 = "conjecture-schur-three-variables"


# power sums ------------------------------------------------------------------


@dataclass(frozen=True)
class HParams:
    n: int
    k: int
    i: int
    j: int
    m: int

    def __post_init__(self):
        if not 1 <= self.i <= self.k:
            raise ValueError(f"need 1 <= i <= k, got i={self.i}, k={self.k}")
        if not 0 <= self.j <= self.n:
            raise ValueError(f"need 0 <= j <= n, got j={self.j}, n={self.n}")

    @property
    def d(self) -> int:
        return self.k * self.m + self.i


def split_degree(d: int, k: int):
    """(m, i) with d = k*m + i and 1 <= i <= k."""
    m = (d - 1) // k
    return m, d - k * m


def h_function(p: HParams) -> int:
    """Lowest-degree kernel excess for residue pattern j; >= 0 means failure.

    The ``-k`` branch applies when the auxiliary socle degree
    m*n - (n - j) is even, the ``-2k`` branch when it is odd.
    """
    n, k, i, j, m = p.n, p.k, p.i, p.j, p.m
    base = n * k + 2 * i * j - n * i - n - k * j
    return base - k if (m * n - (n - j)) % 2 == 0 else base - 2 * k


def power_sum_classifier(n: int, k: int, d: int) -> Verdict:
    """Is x1^k + ... + xn^k a max-rank element on k[x]/(x1^d..xn^d)?"""
    if n < 2 or k < 1 or d < 2:
        raise ValueError("power_sum_classifier needs n >= 2, k >= 1, d >= 2")
    e = n * (d - 1)
    if k > e:
        return Verdict(Status.TRIVIALLY_MAX_RANK, SRC_TRIVIAL)
    if k >= d:
        return Verdict(Status.TRIVIALLY_FAILS, SRC_TRIVIAL, {"reason": "p_k vanishes in A"})
    if k == 1:
        return Verdict(Status.MAX_RANK, SRC_LEFSCHETZ)
    m, i = split_degree(d, k)
    witnesses = [j for j in range(n + 1) if h_function(HParams(n, k, i, j, m)) >= 0]
    if witnesses:
        return Verdict(Status.FAILS, SRC_POWER_SUM, {"m": m, "i": i, "j": witnesses})
    return Verdict(Status.MAX_RANK, SRC_POWER_SUM, {"m": m, "i": i})


def power_sum_power_classifier(n: int, k: int, t: int, d: int) -> Verdict:
    """Is (x1^k + ... + xn^k)^t a max-rank element?

    Same residue-pattern criterion as for t = 1: after substituting
    y = x^k the question becomes where the first kernel element of
    (y1 + ... + yn)^t sits in the auxiliary complete intersection D with
    socle degree s = m*n - (n - j). That degree is ceil((s - t + 1) / 2),
    which reproduces the t-shifted parity branches, but it can never be
    negative: once t > s + 1 the kernel already starts in degree 0, so the
    degree is clamped there.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if n < 2 or k < 1 or d < 2:
        raise ValueError("power_sum_power_classifier needs n >= 2, k >= 1, d >= 2")
    e = n * (d - 1)
    if k * t > e:
        return Verdict(Status.TRIVIALLY_MAX_RANK, SRC_TRIVIAL)
    if k >= d:
        return Verdict(Status.TRIVIALLY_FAILS, SRC_TRIVIAL, {"reason": "p_k vanishes in A"})
    m, i = split_degree(d, k)
    witnesses = []
    for j in range(n + 1):
        s_aux = m * n - (n - j)
        low = max(0, -(-(s_aux - t + 1) // 2))
        # injectivity is expected iff source + target degree <= socle degree
        if e - 2 * k * low - k * t - 2 * (n - j) * i >= 0:
            witnesses.append(j)
    if witnesses:
        return Verdict(Status.FAILS, SRC_POWER_SUM_POWER, {"m": m, "i": i, "j": witnesses})
    return Verdict(Status.MAX_RANK, SRC_POWER_SUM_POWER, {"m": m, "i": i})


# Toeplitz determinants -------------------------------------------------------------


def toeplitz_matrix(r: int, c: int, n: int) -> LabeledMatrix:
    """n x n 0/1 Toeplitz matrix: first row c ones, first column r ones."""
    if r < 1 or c < 1 or n < 1:
        raise ValueError("toeplitz_matrix needs r, c, n >= 1")
    ent = {}
    for a in range(n):
        for b in range(n):
            if 0 <= b - a < c or 0 <= a - b < r:
                ent[a, b] = 1
    return LabeledMatrix(tuple(range(n)), tuple(range(n)), ent)


def toeplitz_det(r: int, c: int, n: int) -> int:
    """Determinant of :func:`toeplitz_matrix` (r, c, n) in closed form."""
    if r < 1 or c < 1 or n < 1:
        raise ValueError("toeplitz_det needs r, c, n >= 1")
    if r == 1 or c == 1:
        # unit triangular; the periodic formula below only holds for r, c >= 2
        return 1
    period = r + c - 1
    if n % period == 0:
        return (-1) ** (n * (r - 1))
    if n % period == 1:
        return (-1) ** ((n + 1) * (r - 1))
    return 0


# Schur polynomials in two variables ---------------------------------------------------


def schur2_classifier(a: int, b: int, d: int) -> Verdict:
    """Is s_(a,b)(x, y) a max-rank element on k[x,y]/(x^d, y^d)?"""
    if not (a >= b >= 0) or d < 2:
        raise ValueError(f"need a >= b >= 0 and d >= 2, got a={a}, b={b}, d={d}")
    if a + b >= 2 * d - 2:
        return Verdict(Status.MAX_RANK, SRC_SCHUR2, {"reason": "degree at least socle degree"})
    w = a - b + 1
    m, odd = divmod(a + b, 2)
    allowed = (m, m + 1, m + 2) if odd else (m, m + 1)
    ok = d % w in {x % w for x in allowed}
    return Verdict(Status.MAX_RANK if ok else Status.FAILS, SRC_SCHUR2,
                   {"m": m, "modulus": w, "residue": d % w})


def h_two_vars_classifier(a: int, d: int) -> Verdict:
    if a < 1 or d < 2:
        raise ValueError("need a >= 1 and d >= 2")
    if a >= 2 * d - 2:
        return Verdict(Status.MAX_RANK, SRC_H2, {"reason": "degree at least socle degree"})
    v = schur2_classifier(a, 0, d)
    return Verdict(v.status, SRC_H2, v.details)


# n >= 3 --------------------------------------------------------------------------------


def schur_reducible_failure(lam: Sequence[int], n: int, d: int) -> Verdict:
    """Failure of reducible Schur polynomials once d >= (n + |lambda|)/(n - 2)."""
    if n < 3:
        raise ValueError("proposition requires n >= 3")
    lam = Partition(lam)
    if len(lam.nonzero()) > n:
        return Verdict(Status.NOT_DETERMINED, SRC_SCHUR_REDUCIBLE, {"reason": "s_lambda is zero"})
    if not is_reducible_schur(lam, n):
        return Verdict(Status.NOT_DETERMINED, SRC_SCHUR_REDUCIBLE, {"reason": "irreducible"})
    if d * (n - 2) >= n + lam.size:
        return Verdict(Status.FAILS, SRC_SCHUR_REDUCIBLE, {"gcd": schur_gcd(lam, n)})
    return Verdict(Status.NOT_DETERMINED, SRC_SCHUR_REDUCIBLE, {"reason": "d below bound"})


def e_block_count(n: int, d: int) -> int:
    """s with (s-1)d + 1 <= n + 1 <= s d."""
    return -(-(n + 1) // d)


def g_function(n: int, d: int) -> int:
    s = e_block_count(n, d)
    return (s * d - (n + 1)) ** 2 + (1 - s) * d * d + (n - 2) * d + 1


def e_degree_d_failure(n: int, d: int) -> Verdict:
    """Proved failures of e_d on k[x1..xn]/(x_i^d) for d <= n."""
    if d > n:
        raise ValueError("e_d vanishes nowhere relevant: requires d <= n")
    if n < 3 or d < 1:
        raise ValueError("need n >= 3 and d >= 1")
    info = {"s": e_block_count(n, d), "g": g_function(n, d)}
    if d >= 4 or (d == 3 and n % 3 == 2):
        return Verdict(Status.FAILS, SRC_E_DEGREE_D, info)
    return Verdict(Status.NOT_DETERMINED, SRC_E_DEGREE_D, info)


def h_degree_d_failure(n: int, d: int) -> Verdict:
    """h_d fails once d >= n + 2."""
    if n < 3 or d < 2:
        raise ValueError("need n >= 3 and d >= 2")
    if d >= n + 2:
        return Verdict(Status.FAILS, SRC_H_DEGREE_D, {"witness_degree": comb(n, 2) + n * (d - n)})
    return Verdict(Status.NOT_DETERMINED, SRC_H_DEGREE_D)


def conjecture_e(n: int, d: int) -> Verdict:
    if n < 3 or not 2 <= d <= n:
        return Verdict(Status.NOT_DETERMINED, SRC_CONJ_E, {"reason": "outside hypotheses"})
    ok = d == 2 or (d == 3 and n % 3 != 2)
    return Verdict(Status.CONJ_MAX_RANK if ok else Status.CONJ_FAILS, SRC_CONJ_E)


def conjecture_h(n: int, d: int) -> Verdict:
    if n < 3 or d < 2:
        return Verdict(Status.NOT_DETERMINED, SRC_CONJ_H, {"reason": "outside hypotheses"})
    ok = d == 2 or (d == 3 and n % 3 != 1) or (d == 4 and n == 3)
    return Verdict(Status.CONJ_MAX_RANK if ok else Status.CONJ_FAILS, SRC_CONJ_H)


SCHUR3_PERIODIC = {
    (2, 2, 0): (6, {2, 4, 5}),
    (3, 3, 0): (8, {6}),
    (4, 4, 0): (10, {8}),
}


def in_schur3_failing_set(lam: Sequence[int]) -> bool:
    a, b, c = Partition(lam).padded(3)
    return c != 0 or gcd(a + 2, b + 1) > 1 or (a == b and c == 0 and a >= 5)


def conjecture_schur3(lam: Sequence[int], d: int, threshold: int | None = None) -> Verdict:
    """Large-d behaviour of s_lambda(x1, x2, x3).

    ``threshold``: verdicts are only issued for d > threshold; the default
    is |lambda| + 2.
    """
    p = Partition(lam)
    if len(p.nonzero()) > 3:
        raise ValueError(f"{tuple(lam)} has more than 3 parts")
    lam3 = tuple(p.padded(3))
    if threshold is None:
        threshold = p.size + 2
    if d <= threshold:
        return Verdict(Status.NOT_DETERMINED, SRC_CONJ_SCHUR3, {"reason": f"d <= {threshold}"})
    if in_schur3_failing_set(lam3):
        return Verdict(Status.CONJ_FAILS, SRC_CONJ_SCHUR3)
    if lam3 in SCHUR3_PERIODIC:
        mod, good = SCHUR3_PERIODIC[lam3]
        ok = d % mod in good
        return Verdict(Status.CONJ_MAX_RANK if ok else Status.CONJ_FAILS, SRC_CONJ_SCHUR3)
    return Verdict(Status.CONJ_MAX_RANK, SRC_CONJ_SCHUR3)
