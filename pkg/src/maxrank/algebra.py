"""Graded structure of A = k[x1..xn]/(x1^d, ..., xn^d).

Monomials of A are exponent tuples with every entry < d. Within a degree
they are listed in graded-lexicographic order with x1 > x2 > ... > xn,
i.e. descending lexicographic order of the tuples, so ``x1^i`` comes first.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

ExponentTuple = Tuple[int, ...]


class TrivialRange(ValueError):
    """Raised when a multiplier degree exceeds the socle degree."""


@dataclass(frozen=True)
class AlgebraSpec:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.d < 2:
            raise ValueError(f"need d >= 2, got {self.d}")

    @property
    def socle_degree(self) -> int:
        return self.n * (self.d - 1)

    def dim(self, i: int) -> int:
        """Dimension of the graded piece A_i (0 outside the socle range)."""
        h = _hilbert(self.n, self.d)
        return h[i] if 0 <= i < len(h) else 0


@dataclass(frozen=True)
class CoeffSeries:
    """Integer series ``sum coeffs[j] * t^(offset + j)``.

    Leading and trailing zeros are stripped on construction, so the zero
    series is ``CoeffSeries(0, ())``.
    """

    offset: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        off = self.offset
        while c and c[-1] == 0:
            c.pop()
        lead = 0
        while lead < len(c) and c[lead] == 0:
            lead += 1
        c = c[lead:]
        off = off + lead if c else 0
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))
        object.__setattr__(self, "offset", off)

    @classmethod
    def from_dense(cls, coeffs) -> "CoeffSeries":
        return cls(0, tuple(coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, degree: int) -> int:
        j = degree - self.offset
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    @property
    def top_degree(self) -> int:
        return self.offset + len(self.coeffs) - 1

    def dense(self) -> list:
        """Coefficients indexed by degree starting at 0."""
        return [0] * self.offset + list(self.coeffs)

    def __sub__(self, other: "CoeffSeries") -> "CoeffSeries":
        top = max(self.top_degree, other.top_degree, 0)
        return CoeffSeries(0, tuple(self[i] - other[i] for i in range(top + 1)))

    def is_symmetric(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def to_text(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*{var}^{self.offset + j}")
        return " + ".join(parts).replace("+ -", "- ")

    def factored_text(self, var: str = "t") -> str:
        """Content and lowest power pulled out, e.g. ``10t^11(1+5t+t^2)``."""
        if self.is_zero():
            return "0"
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        inner = []
        for j, c in enumerate(self.coeffs):
            c //= g
            if not c:
                continue
            mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
            coef = str(c) if (c != 1 or not mono) else ""
            inner.append(coef + mono)
        head = ("" if g == 1 else str(g)) + (f"{var}^{self.offset}" if self.offset else "")
        body = "+".join(inner).replace("+-", "-")
        if len(inner) == 1 and head:
            return head + (body if body != "1" else "")
        return f"{head}({body})" if head else body


@lru_cache(maxsize=None)
def _hilbert(n: int, d: int) -> Tuple[int, ...]:
    coeffs = [1]
    for _ in range(n):
        nxt = [0] * (len(coeffs) + d - 1)
        for i, c in enumerate(coeffs):
            for j in range(d):
                nxt[i + j] += c
        coeffs = nxt
    return tuple(coeffs)


def hilbert_series(spec: AlgebraSpec) -> CoeffSeries:
    """Coefficients of (1 + t + ... + t^(d-1))^n."""
    return CoeffSeries(0, _hilbert(spec.n, spec.d))


@lru_cache(maxsize=256)
def _basis(n: int, d: int, i: int) -> Tuple[ExponentTuple, ...]:
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            if left < d:
                out.append(tuple(prefix) + (left,))
            return
        # the remaining slots - 1 variables can absorb at most (slots-1)(d-1)
        hi = min(left, d - 1)
        lo = max(0, left - (slots - 1) * (d - 1))
        for e in range(hi, lo - 1, -1):
            prefix.append(e)
            rec(prefix, left - e, slots - 1)
            prefix.pop()

    if 0 <= i <= n * (d - 1):
        rec([], i, n)
    return tuple(out)


def basis(spec: AlgebraSpec, i: int) -> Tuple[ExponentTuple, ...]:
    """Monomial basis of A_i in graded-lex order; empty outside [0, n(d-1)]."""
    return _basis(spec.n, spec.d, i)


def expected_quotient_series(spec: AlgebraSpec, k: int) -> CoeffSeries:
    """[(1 - t^k) HS(A; t)], truncated at the first non-positive coefficient."""
    if k < 1:
        raise ValueError("k must be >= 1")
    h = _hilbert(spec.n, spec.d)
    kept = []
    for i in range(len(h) + k):
        c = (h[i] if i < len(h) else 0) - (h[i - k] if 0 <= i - k < len(h) else 0)
        if c <= 0:
            break
        kept.append(c)
    return CoeffSeries(0, tuple(kept))


@dataclass(frozen=True)
class KDegree:
    total: int
    residues: Tuple[int, ...]


def k_degree(m: ExponentTuple, k: int) -> KDegree:
    if k < 1:
        raise ValueError("k must be >= 1")
    return KDegree(sum(m), tuple(e % k for e in m))


def critical_degree(spec: AlgebraSpec, k: int) -> int:
    """Largest j with dim A_j <= dim A_{j+k}.

    Injectivity of a degree-k multiplier at this single degree decides
    max rank on a Gorenstein algebra.
    """
    e = spec.socle_degree
    if k > e:
        raise TrivialRange(f"k={k} exceeds socle degree {e}: every map is expected to be zero")
    if k < 1:
        raise ValueError("k must be >= 1")
    best = None
    for j in range(e + 1):
        if spec.dim(j) <= spec.dim(j + k):
            best = j
    return best
