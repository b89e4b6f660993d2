"""Sparse integer polynomials and the symmetric families under study."""
from __future__ import annotations

import re
from itertools import combinations
from math import gcd
from typing import Dict, Iterable, Sequence, Tuple

from .algebra import AlgebraSpec, ExponentTuple


class SparsePoly:
    """Polynomial in ``nvars`` variables with arbitrary-precision coefficients.

    Terms live in a dict mapping exponent tuples to nonzero ints. Instances
    are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[ExponentTuple, int] | None = None):
        self.nvars = nvars
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise ValueError(f"exponent tuple {m} has wrong length for {nvars} variables")
            if c:
                clean[tuple(m)] = int(c)
        self.terms = clean

    # constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, nvars: int, c: int = 1) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "SparsePoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "SparsePoly":
        """The variable x_i, 1-based."""
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): 1})

    # basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degrees(self) -> set:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def coeff(self, m: ExponentTuple) -> int:
        return self.terms.get(tuple(m), 0)

    def evaluate(self, point: Sequence[int]) -> int:
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                v *= x**e
            total += v
        return total

    def sorted_terms(self):
        """Terms by descending degree, then descending lex (graded-lex)."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def is_symmetric(self) -> bool:
        for i in range(self.nvars - 1):
            swapped = {}
            for m, c in self.terms.items():
                m2 = list(m)
                m2[i], m2[i + 1] = m2[i + 1], m2[i]
                swapped[tuple(m2)] = c
            if swapped != self.terms:
                return False
        return True

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "SparsePoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __eq__(self, other):
        if isinstance(other, int):
            return self == SparsePoly.constant(self.nvars, other) if other else not self.terms
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SparsePoly(self.nvars, out)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def scale(self, c: int) -> "SparsePoly":
        return SparsePoly(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "SparsePoly":
        if e < 0:
            raise ValueError("negative power")
        out = SparsePoly.constant(self.nvars)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def substitute_powers(self, g: int) -> "SparsePoly":
        """f(x1^g, ..., xn^g)."""
        return SparsePoly(self.nvars, {tuple(g * e for e in m): c for m, c in self.terms.items()})

    def embed(self, nvars: int, positions: Sequence[int]) -> "SparsePoly":
        """Rename variable i to x_{positions[i]} (1-based) inside ``nvars`` variables."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * nvars
            for src, dst in zip(m, positions):
                e[dst - 1] += src
            out[tuple(e)] = c
        return SparsePoly(nvars, out)

    # text -----------------------------------------------------------------

    def to_text(self) -> str:
        """Serialize as ``coef*x1^a1*...*xn^an`` terms joined by `` + ``.

        Factors with exponent zero are omitted; a constant term is just its
        coefficient. Terms are in graded-lex order.
        """
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [str(c)] + [f"x{i + 1}^{e}" for i, e in enumerate(m) if e]
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {self.to_text()})"


_TERM = re.compile(r"^\s*([+-]?\d+)((?:\*x\d+(?:\^\d+)?)*)\s*$")
_FACTOR = re.compile(r"\*x(\d+)(?:\^(\d+))?")


def parse_poly(text: str, nvars: int) -> SparsePoly:
    """Inverse of :meth:`SparsePoly.to_text`."""
    text = text.strip()
    if text == "0":
        return SparsePoly(nvars)
    out: Dict[ExponentTuple, int] = {}
    for chunk in text.split(" + "):
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r}")
        e = [0] * nvars
        for idx, exp in _FACTOR.findall(m.group(2)):
            i = int(idx)
            if not 1 <= i <= nvars:
                raise ValueError(f"variable x{i} out of range for {nvars} variables")
            e[i - 1] += int(exp) if exp else 1
        key = tuple(e)
        out[key] = out.get(key, 0) + int(m.group(1))
    return SparsePoly(nvars, out)


def multiply(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    f._check(g)
    out: Dict[ExponentTuple, int] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return SparsePoly(f.nvars, out)


def normal_form(f: SparsePoly, spec: AlgebraSpec) -> SparsePoly:
    """Reduce modulo (x1^d, ..., xn^d) by dropping divisible terms."""
    if f.nvars != spec.n:
        raise ValueError(f"polynomial has {f.nvars} variables, algebra has {spec.n}")
    d = spec.d
    return SparsePoly(f.nvars, {m: c for m, c in f.terms.items() if max(m, default=0) < d})


# symmetric families --------------------------------------------------------


def power_sum(n: int, k: int) -> SparsePoly:
    if n < 1 or k < 1:
        raise ValueError("power_sum needs n >= 1 and k >= 1")
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = 1
    return SparsePoly(n, terms)


def elementary(n: int, k: int) -> SparsePoly:
    """e_k in n variables; the zero polynomial when k > n."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    terms = {}
    for idx in combinations(range(n), k):
        e = [0] * n
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = 1
    return SparsePoly(n, terms)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def complete_homogeneous(n: int, k: int) -> SparsePoly:
    if n < 1 or k < 0:
        raise ValueError("complete_homogeneous needs n >= 1 and k >= 0")
    return SparsePoly(n, {m: 1 for m in _compositions(k, n)})


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative ints."""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def nonzero(self) -> Tuple[int, ...]:
        return tuple(p for p in self if p)

    def padded(self, n: int) -> "Partition":
        nz = self.nonzero()
        if len(nz) > n:
            raise ValueError(f"{tuple(self)} has more than {n} nonzero parts")
        return Partition(nz + (0,) * (n - len(nz)))

    def conjugate(self) -> "Partition":
        nz = self.nonzero()
        if not nz:
            return Partition(())
        return Partition(sum(1 for p in nz if p > j) for j in range(nz[0]))


def _ssyt_weights(shape: Tuple[int, ...], n: int) -> Dict[ExponentTuple, int]:
    """Count semistandard tableaux of ``shape`` with entries in 1..n by content."""
    weights: Dict[ExponentTuple, int] = {}
    content = [0] * n

    def fill_row(r, prev_row, row, col):
        if r == len(shape):
            key = tuple(content)
            weights[key] = weights.get(key, 0) + 1
            return
        if col == shape[r]:
            fill_row(r + 1, row, [], 0)
            return
        lo = row[-1] if row else 1
        if prev_row is not None:
            lo = max(lo, prev_row[col] + 1)
        # leave room below for column strictness in the remaining rows
        below = sum(1 for rr in range(r + 1, len(shape)) if shape[rr] > col)
        for v in range(lo, n - below + 1):
            row.append(v)
            content[v - 1] += 1
            fill_row(r, prev_row, row, col + 1)
            content[v - 1] -= 1
            row.pop()

    fill_row(0, None, [], 0)
    return weights


def schur(lam: Sequence[int], n: int) -> SparsePoly:
    """Schur polynomial s_lambda(x1..xn) as a sum over semistandard tableaux.

    Returns the zero polynomial if lambda has more than n nonzero parts.
    """
    lam = Partition(lam)
    shape = lam.nonzero()
    if len(shape) > n:
        return SparsePoly(n)
    return SparsePoly(n, _ssyt_weights(shape, n))


def vandermonde(lo: int, hi: int, n: int) -> SparsePoly:
    """prod_{lo <= i < j <= hi} (x_i - x_j) inside n variables."""
    if not 1 <= lo <= hi <= n:
        raise ValueError(f"need 1 <= lo <= hi <= n, got {lo}, {hi}, {n}")
    out = SparsePoly.constant(n)
    for i in range(lo, hi + 1):
        for j in range(i + 1, hi + 1):
            out = out * (SparsePoly.var(i, n) - SparsePoly.var(j, n))
    return out


def is_reducible_schur(lam: Sequence[int], n: int) -> bool:
    """Reducibility of s_lambda(x1..xn) over the rationals.

    s_lambda is irreducible iff lambda_n == 0 and
    gcd(lambda_1 + n - 1, lambda_2 + n - 2, ..., lambda_n) == 1.
    The constant s_() is declared irreducible.
    """
    p = Partition(lam).padded(n)
    if not p.nonzero():
        return False
    if p[-1] != 0:
        return True
    g = 0
    for i, part in enumerate(p):
        g = gcd(g, part + n - 1 - i)
    return g > 1


def schur_gcd(lam: Sequence[int], n: int) -> int:
    p = Partition(lam).padded(n)
    g = 0
    for i, part in enumerate(p):
        g = gcd(g, part + n - 1 - i)
    return g
