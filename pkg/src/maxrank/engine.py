"""Max-rank decisions by exact rank computation.

This is the brute-force side of every cross-check: it only looks at
multiplication matrices and never at the closed-form criteria.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import (AlgebraSpec, CoeffSeries, basis, critical_degree,
                      expected_quotient_series, hilbert_series, k_degree)
from .linalg import DEFAULT_PRIME_COUNT, DEFAULT_SEED, EXACT_LIMIT, certified_rank
from .matrices import LabeledMatrix, mult_matrix, multiplier_degree
from .sympoly import SparsePoly, normal_form, power_sum

FAST = "fast"
FULL = "full"


@dataclass(frozen=True)
class RankOptions:
    seed: int = DEFAULT_SEED
    prime_count: int = DEFAULT_PRIME_COUNT
    exact_limit: int = EXACT_LIMIT


DEFAULT_OPTIONS = RankOptions()


@dataclass
class MaxRankVerdict:
    status: str  # MaxRank, Fails, TriviallyMaxRank, TriviallyFails
    is_max_rank: bool
    critical_degree: Optional[int]
    critical_rank: Optional[int]
    expected_rank: Optional[int]
    provenance: str
    mode: str
    failure_series: Optional[CoeffSeries] = None
    details: Dict = field(default_factory=dict)

    def as_dict(self) -> Dict:
        out = {
            "status": self.status,
            "is_max_rank": self.is_max_rank,
            "critical_degree": self.critical_degree,
            "critical_rank": self.critical_rank,
            "expected_rank": self.expected_rank,
            "provenance": self.provenance,
            "mode": self.mode,
        }
        if self.failure_series is not None:
            out["failure_series"] = series_dict(self.failure_series)
        return out


def series_dict(s: CoeffSeries) -> Dict:
    return {"offset": s.offset, "coeffs": list(s.coeffs), "text": s.factored_text()}


def map_rank(f: SparsePoly, spec: AlgebraSpec, i: int, options: RankOptions = DEFAULT_OPTIONS,
             k: Optional[int] = None):
    """Certified rank of multiplication by f from A_i to A_{i+k}."""
    M = mult_matrix(f, spec, i, k)
    return certified_rank(M, seed=options.seed, prime_count=options.prime_count,
                          exact_limit=options.exact_limit), M


def quotient_series(f: SparsePoly, spec: AlgebraSpec, options: RankOptions = DEFAULT_OPTIONS,
                    k: Optional[int] = None) -> CoeffSeries:
    """HS(A/(f)): dim A_t minus the rank of multiplication into A_t."""
    hs = hilbert_series(spec)
    if f.is_zero() and k is None:
        return hs
    k = multiplier_degree(f) if not f.is_zero() else k
    fa = normal_form(f, spec)
    if fa.is_zero():
        return hs
    e = spec.socle_degree
    out = []
    for t in range(e + 1):
        dim = spec.dim(t)
        if t - k >= 0 and k >= 0:
            res, _ = map_rank(fa, spec, t - k, options, k)
            dim -= res.rank
        out.append(dim)
    return CoeffSeries(0, tuple(out))


def failure_series(f: SparsePoly, spec: AlgebraSpec, options: RankOptions = DEFAULT_OPTIONS) -> CoeffSeries:
    """HS(A/(f)) - [(1 - t^k) HS(A)]; zero iff f is a max-rank element."""
    k = multiplier_degree(f)
    if k < 1:
        raise ValueError("failure series needs a multiplier of degree >= 1")
    if k > spec.socle_degree:
        return CoeffSeries(0, ())
    return quotient_series(f, spec, options) - expected_quotient_series(spec, k)


def is_max_rank(f: SparsePoly, spec: AlgebraSpec, mode: str = FAST,
                options: RankOptions = DEFAULT_OPTIONS) -> MaxRankVerdict:
    """Decide whether f is a max-rank element on A.

    Fast mode checks injectivity at the critical degree only, which
    suffices on a Gorenstein algebra. Full mode computes the whole failure
    series and cross-checks the critical-degree answer against it.
    """
    if mode not in (FAST, FULL):
        raise ValueError(f"unknown mode {mode!r}")
    if f.is_zero():
        raise ValueError("the zero polynomial has no degree; reduce it in A instead")
    k = multiplier_degree(f)
    e = spec.socle_degree
    if k > e:
        return MaxRankVerdict("TriviallyMaxRank", True, None, None, None, "trivial", mode,
                              CoeffSeries(0, ()) if mode == FULL else None)
    fa = normal_form(f, spec)
    if k == 0:
        # a nonzero constant multiplies bijectively
        return MaxRankVerdict("MaxRank", True, 0, 1, 1, "trivial", mode,
                              CoeffSeries(0, ()) if mode == FULL else None)
    if fa.is_zero():
        fs = None
        if mode == FULL:
            fs = hilbert_series(spec) - expected_quotient_series(spec, k)
        return MaxRankVerdict("TriviallyFails", False, None, 0, None, "trivial", mode, fs)
    j = critical_degree(spec, k)
    res, M = map_rank(fa, spec, j, options)
    expected = M.shape[1]
    ok = res.rank == expected
    fs = None
    if mode == FULL:
        fs = failure_series(fa, spec, options)
        if fs.is_zero() != ok:
            raise ArithmeticError(
                f"critical-degree test ({ok}) disagrees with failure series {fs.to_text()}")
    return MaxRankVerdict("MaxRank" if ok else "Fails", ok, j, res.rank, expected,
                          res.provenance, mode, fs, {"matrix_shape": M.shape})


def block_ranks(k: int, spec: AlgebraSpec, i: int,
                options: RankOptions = DEFAULT_OPTIONS) -> List[Tuple[Tuple[int, ...], int]]:
    """Ranks of multiplication by p_k on each k-degree block of A_i -> A_{i+k}.

    Blocks are keyed by the residue tuple of the exponents mod k, which
    multiplication by a sum of k-th powers preserves.
    """
    if not 1 <= k < spec.d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={spec.d}")
    f = power_sum(spec.n, k)
    M = mult_matrix(f, spec, i)
    src: Dict[Tuple[int, ...], List[int]] = {}
    tgt: Dict[Tuple[int, ...], List[int]] = {}
    for c, m in enumerate(M.cols):
        src.setdefault(k_degree(m, k).residues, []).append(c)
    for r, m in enumerate(M.rows):
        tgt.setdefault(k_degree(m, k).residues, []).append(r)
    out = []
    for res in sorted(src):
        B = M.submatrix(tgt.get(res, []), src[res])
        rr = certified_rank(B, seed=options.seed, prime_count=options.prime_count,
                            exact_limit=options.exact_limit)
        out.append((res, rr.rank))
    return out


def rank_profile(f: SparsePoly, spec: AlgebraSpec, options: RankOptions = DEFAULT_OPTIONS) -> List[int]:
    """Rank of multiplication by f from A_i, for i = 0..socle degree."""
    fa = normal_form(f, spec)
    k = multiplier_degree(f)
    return [map_rank(fa, spec, i, options, k)[0].rank for i in range(spec.socle_degree + 1)]
