"""Macaulay inverse systems and explicit certificates of max-rank failure.

Dual forms F in k[X1..Xn] use the same SparsePoly representation as
primal polynomials; x_i acts on F as the partial derivative d/dX_i.
Every witness constructor checks its own guarantee before returning and
raises :class:`WitnessError` if the check fails.
"""
from __future__ import annotations

from math import comb
from typing import Dict, Sequence, Tuple

from .algebra import AlgebraSpec, basis
from .classifiers import e_block_count
from .linalg import certified_rank
from .matrices import LabeledMatrix, multiplier_degree
from .sympoly import (Partition, SparsePoly, complete_homogeneous, elementary,
                      is_reducible_schur, multiply, normal_form, schur, schur_gcd,
                      vandermonde)

DualForm = SparsePoly


class WitnessError(ValueError):
    pass


def _falling(b: int, a: int) -> int:
    out = 1
    for t in range(a):
        out *= b - t
    return out


def diff_apply(f: SparsePoly, F: DualForm) -> DualForm:
    """f acting on F as a constant-coefficient differential operator."""
    if f.nvars != F.nvars:
        raise ValueError(f"variable count mismatch: {f.nvars} vs {F.nvars}")
    out: Dict[Tuple[int, ...], int] = {}
    for a, c in f.terms.items():
        for b, C in F.terms.items():
            if any(x > y for x, y in zip(a, b)):
                continue
            coef = c * C
            for x, y in zip(a, b):
                if x:
                    coef *= _falling(y, x)
            key = tuple(y - x for x, y in zip(a, b))
            out[key] = out.get(key, 0) + coef
    return SparsePoly(F.nvars, out)


def annihilates(f: SparsePoly, F: DualForm) -> bool:
    return diff_apply(f, F).is_zero()


def in_inverse_system(F: DualForm, spec: AlgebraSpec, f: SparsePoly) -> bool:
    """F is killed by every x_i^d and by f."""
    if any(max(m) >= spec.d for m in F.terms):
        return False
    return annihilates(f, F)


def inverse_system_dimension(f: SparsePoly, spec: AlgebraSpec, D: int) -> int:
    """dim of the degree-D part of the inverse system of (x1^d, ..., xn^d, f).

    Forms killed by all x_i^d are spanned by the monomials of A_D, so this
    is the nullity of f acting on that span.
    """
    cols = basis(spec, D)
    if not cols:
        return 0
    k = multiplier_degree(f) if not f.is_zero() else 0
    if f.is_zero() or k > D:
        return len(cols)
    rows: Dict[Tuple[int, ...], int] = {}
    ent: Dict[Tuple[int, int], int] = {}
    for c, m in enumerate(cols):
        img = diff_apply(f, SparsePoly.monomial(m))
        for mono, v in img.terms.items():
            r = rows.setdefault(mono, len(rows))
            ent[r, c] = v
    M = LabeledMatrix(tuple(rows), cols, ent)
    return len(cols) - certified_rank(M).rank


# witnesses ---------------------------------------------------------------------


def _monomial_power(indices: Sequence[int], power: int, n: int) -> SparsePoly:
    e = [0] * n
    for i in indices:
        e[i - 1] = power
    return SparsePoly.monomial(e)


def _require_unexpected(F: DualForm, spec: AlgebraSpec, k: int):
    """Degree-D element of the inverse system while surjectivity A_{D-k} -> A_D is expected."""
    D = F.degree()
    if 2 * D - k < spec.socle_degree:
        raise WitnessError(f"witness of degree {D} is not unexpected for n={spec.n}, d={spec.d}")


def _check_dual_witness(F: DualForm, f: SparsePoly, spec: AlgebraSpec, name: str):
    if F.is_zero() or not F.is_homogeneous():
        raise WitnessError(f"{name}: witness is zero or inhomogeneous")
    for i in range(1, spec.n + 1):
        pw = SparsePoly.var(i, spec.n) ** spec.d
        if not annihilates(pw, F):
            raise WitnessError(f"{name}: x{i}^{spec.d} does not annihilate the witness")
    if not annihilates(f, F):
        raise WitnessError(f"{name}: multiplier does not annihilate the witness")
    _require_unexpected(F, spec, multiplier_degree(f))


def e_witness(n: int, d: int) -> DualForm:
    """Dual form in the inverse system of (x_i^d, e_d) of unexpectedly high degree.

    F = (X1...X_{d-1})^(d-1) * V(d..2d-1) * ... * V((s-1)d..n), where the
    Vandermonde blocks each hold d variables except the last.
    """
    if not (n >= 3 and (4 <= d <= n or (d == 3 and n % 3 == 2))):
        raise WitnessError(f"witness not guaranteed for n={n}, d={d}")
    s = e_block_count(n, d)
    F = _monomial_power(range(1, d), d - 1, n)
    for block in range(1, s - 1):
        F = F * vandermonde(block * d, (block + 1) * d - 1, n)
    F = F * vandermonde((s - 1) * d, n, n)
    expected_degree = (d - 1) ** 2 + (s - 2) * comb(d, 2) + comb(n - (s - 1) * d + 1, 2)
    if F.degree() != expected_degree:
        raise WitnessError(f"witness degree {F.degree()} != {expected_degree}")
    _check_dual_witness(F, elementary(n, d), AlgebraSpec(n, d), "e_witness")
    return F


def h_witness(n: int, d: int) -> DualForm:
    """F = (X1...Xn)^(d-n) V(n), killed by h_d and every x_i^d."""
    if n < 3:
        raise ValueError("h_witness needs n >= 3")
    if d < n:
        raise ValueError(f"negative exponent d - n = {d - n}")
    if d < n + 2:
        raise WitnessError(f"witness not guaranteed for n={n}, d={d}: needs d >= n + 2")
    F = _monomial_power(range(1, n + 1), d - n, n) * vandermonde(1, n, n)
    _check_dual_witness(F, complete_homogeneous(n, d), AlgebraSpec(n, d), "h_witness")
    return F


def block_vandermonde_form(n: int, blocks: Sequence[Tuple]) -> DualForm:
    """prod over blocks (lo, hi, r[, with_v]) of (X_lo...X_hi)^r V(lo..hi).

    Manual construction helper for candidate inverse-system elements; the
    block boundaries and powers are chosen by the caller. A fourth entry
    False drops the Vandermonde factor of that block.
    """
    F = SparsePoly.constant(n)
    for blk in blocks:
        lo, hi, r = blk[:3]
        F = F * _monomial_power(range(lo, hi + 1), r, n)
        if len(blk) < 4 or blk[3]:
            F = F * vandermonde(lo, hi, n)
    return F


def _check_kernel_witness(w: SparsePoly, f: SparsePoly, spec: AlgebraSpec, name: str):
    if normal_form(w, spec).is_zero():
        raise WitnessError(f"{name}: witness vanishes in A")
    if not normal_form(multiply(w, f), spec).is_zero():
        raise WitnessError(f"{name}: witness is not in the kernel")
    if 2 * w.degree() + f.degree() > spec.socle_degree:
        raise WitnessError(f"{name}: kernel element of degree {w.degree()} is not unexpected")


def schur2_kernel_witness(a: int, b: int, d: int) -> SparsePoly:
    """Unexpected kernel element of multiplication by s_(a,b)(x, y).

    With w = a - b + 1 and d = w*l + b + q, |2q| + 3 <= w, the element is
    (x - y) h_{l-1}(x^w, y^w) (xy)^max(0, q).
    """
    if not a >= b >= 0:
        raise ValueError("need a >= b >= 0")
    if (a + b) % 2 == 0 or a + b >= 2 * d - 2:
        raise WitnessError(f"witness not guaranteed for (a, b, d) = ({a}, {b}, {d})")
    w = a - b + 1
    t = (d - b) % w
    if 2 * t + 3 <= w:
        q = t
    elif 2 * (w - t) + 3 <= w:
        q = t - w
    else:
        raise WitnessError(f"witness not guaranteed for (a, b, d) = ({a}, {b}, {d})")
    l = (d - b - q) // w
    x, y = SparsePoly.var(1, 2), SparsePoly.var(2, 2)
    wit = (x - y) * complete_homogeneous(2, l - 1).substitute_powers(w)
    if q > 0:
        wit = wit * SparsePoly.monomial((q, q))
    _check_kernel_witness(wit, schur((a, b), 2), AlgebraSpec(2, d), "schur2_kernel_witness")
    return wit


def reducible_schur_witness(lam: Sequence[int], n: int, d: int) -> SparsePoly:
    """Unexpected kernel element of multiplication by a reducible s_lambda."""
    lam = Partition(lam).padded(n)
    if not is_reducible_schur(lam, n):
        raise WitnessError(f"s_{tuple(lam)} is irreducible in {n} variables")
    if n < 3 or d * (n - 2) < n + lam.size:
        raise WitnessError(f"witness not guaranteed for n={n}, d={d}")
    if lam[-1]:
        e = [0] * n
        e[0] = d - lam[-1]
        wit = SparsePoly.monomial(e)
    else:
        g = schur_gcd(lam, n)
        q = (d - 1) // g  # d = g*q + r with 0 < r <= g
        x1 = SparsePoly.var(1, n)
        x2 = SparsePoly.var(2, n)
        hq = complete_homogeneous(2, q).substitute_powers(g).embed(n, (1, 2))
        wit = (x1 - x2) * hq
    _check_kernel_witness(wit, schur(lam, n), AlgebraSpec(n, d), "reducible_schur_witness")
    return wit
