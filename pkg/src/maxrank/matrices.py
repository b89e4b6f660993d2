"""Integer matrices whose rows and columns carry monomial labels."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .algebra import AlgebraSpec, ExponentTuple, basis
from .sympoly import SparsePoly, normal_form


class InhomogeneousMultiplier(ValueError):
    pass


@dataclass
class LabeledMatrix:
    """Sparse exact integer matrix in coordinate form.

    ``rows`` and ``cols`` are label sequences (monomials for multiplication
    maps, plain integers otherwise). ``entries`` maps (row, col) index
    pairs to nonzero Python ints.
    """

    rows: Sequence
    cols: Sequence
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def from_dense(cls, rows) -> "LabeledMatrix":
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if m else 0
        ent = {(i, j): int(v) for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(tuple(range(m)), tuple(range(n)), ent)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def dense(self) -> List[List[int]]:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def to_modp(self, p: int) -> np.ndarray:
        """Dense C-contiguous int64 copy with entries reduced into [0, p)."""
        a = np.zeros(self.shape, dtype=np.int64)
        if self.entries:
            idx = np.fromiter((k for ij in self.entries for k in ij), dtype=np.int64, count=2 * self.nnz)
            vals = np.array([v % p for v in self.entries.values()], dtype=np.int64)
            a[idx[0::2], idx[1::2]] = vals
        return a

    def transpose(self) -> "LabeledMatrix":
        return LabeledMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "LabeledMatrix":
        rpos = {r: a for a, r in enumerate(row_idx)}
        cpos = {c: b for b, c in enumerate(col_idx)}
        ent = {}
        for (i, j), v in self.entries.items():
            a = rpos.get(i)
            if a is None:
                continue
            b = cpos.get(j)
            if b is not None:
                ent[a, b] = v
        return LabeledMatrix(tuple(self.rows[i] for i in row_idx), tuple(self.cols[j] for j in col_idx), ent)

    def row_dicts(self) -> List[Dict[int, int]]:
        out: List[Dict[int, int]] = [dict() for _ in self.rows]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def matvec(self, v: Sequence[int]) -> List[int]:
        """Exact product with an integer column vector."""
        out = [0] * len(self.rows)
        for (i, j), a in self.entries.items():
            x = v[j]
            if x:
                out[i] += a * x
        return out

    def is_zero_one(self) -> bool:
        return all(v == 1 for v in self.entries.values())

    def to_pbm(self) -> str:
        """ASCII portable bitmap (P1): one pixel per entry, 1 = nonzero."""
        m, n = self.shape
        grid = [["0"] * n for _ in range(m)]
        for (i, j), v in self.entries.items():
            if v:
                grid[i][j] = "1"
        lines = ["P1", f"{n} {m}"]
        for row in grid:
            # PBM readers accept any whitespace; keep lines under 70 chars
            for s in range(0, max(n, 1), 34):
                lines.append(" ".join(row[s:s + 34]))
        return "\n".join(lines) + "\n"


def multiplier_degree(f: SparsePoly) -> int:
    if not f.is_homogeneous():
        raise InhomogeneousMultiplier(f"inhomogeneous multiplier: degrees {sorted(f.degrees())}")
    return f.degree()


def mult_matrix(f: SparsePoly, spec: AlgebraSpec, i: int, k: int | None = None) -> LabeledMatrix:
    """Matrix of multiplication by f from A_i to A_{i+k}.

    Entry (r, c) is the coefficient of row monomial r in normal_form(f * c).
    ``k`` is only needed when f is zero, since then it has no degree.
    """
    if f.is_zero():
        if k is None:
            raise ValueError("degree of a zero multiplier must be given explicitly")
    else:
        k = multiplier_degree(f)
    src: Tuple[ExponentTuple, ...] = basis(spec, i) if i >= 0 else ()
    tgt: Tuple[ExponentTuple, ...] = basis(spec, i + k) if i >= 0 else ()
    if not src or not tgt:
        return LabeledMatrix(tgt, src, {})
    d = spec.d
    where = {m: r for r, m in enumerate(tgt)}
    terms = list(normal_form(f, spec).terms.items())
    ent: Dict[Tuple[int, int], int] = {}
    for c, m in enumerate(src):
        for t, coef in terms:
            e = tuple(a + b for a, b in zip(m, t))
            if max(e) < d:
                key = (where[e], c)
                ent[key] = ent.get(key, 0) + coef
    return LabeledMatrix(tgt, src, {key: v for key, v in ent.items() if v})
