"""Compare the compiled modular-rank kernel against the numpy fallback.

Usage: python3 benchmarks/bench_rank.py [--sizes 200,400,800] [--repeat 3]

Matrices are random residues mod a 31-bit prime plus one real
multiplication matrix (e_5 on n=6, d=5 at the critical degree).
"""
import argparse
import time

import numpy as np

from maxrank import _kernels_py
from maxrank.algebra import AlgebraSpec, critical_degree
from maxrank.linalg import primes_for_seed
from maxrank.matrices import mult_matrix
from maxrank.sympoly import elementary, normal_form

try:
    from maxrank import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, A, p, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(np.array(A, copy=True), p)
        times.append(time.perf_counter() - t0)
    return result, min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="200,400,800")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-real", action="store_true", help="skip the e_5 on n=6, d=5 matrix")
    args = ap.parse_args(argv)

    p = primes_for_seed(1, 1)[0]
    rng = np.random.default_rng(0)
    cases = []
    for s in (int(x) for x in args.sizes.split(",")):
        cases.append((f"random {s}x{s}", rng.integers(0, p, size=(s, s), dtype=np.int64)))
    if not args.skip_real:
        spec = AlgebraSpec(6, 5)
        f = normal_form(elementary(6, 5), spec)
        M = mult_matrix(f, spec, critical_degree(spec, 5))
        cases.append((f"e5 n=6 d=5 {M.shape[0]}x{M.shape[1]}", M.to_modp(p)))

    if compiled is None:
        print("compiled kernel not built; only the fallback is timed")
    print(f"{'matrix':<28}{'rank':>7}{'numpy s':>10}{'cython s':>10}{'speedup':>9}")
    for label, A in cases:
        r_py, t_py = best_of(_kernels_py.rank_modp, A, p, args.repeat)
        if compiled is not None:
            r_c, t_c = best_of(compiled.rank_modp, A, p, args.repeat)
            if r_c != r_py:
                raise SystemExit(f"{label}: backends disagree ({r_c} vs {r_py})")
            print(f"{label:<28}{r_py:>7}{t_py:>10.3f}{t_c:>10.3f}{t_py / t_c:>8.1f}x")
        else:
            print(f"{label:<28}{r_py:>7}{t_py:>10.3f}{'-':>10}{'-':>9}")


if __name__ == "__main__":
    main()
