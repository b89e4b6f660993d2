"""maxrank command line.

Verbs: check, sweep, failure-series, matrix-image, stabilize, witness-check.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from .algebra import AlgebraSpec
from .engine import FAST, FULL, RankOptions, quotient_series
from .harness import (DEFAULT_CAP, FAMILIES, Infeasible, failure_series_record,
                      format_stabilization, grid_cells, make_params, multiplier,
                      parse_range, report_csv, report_json, run_cell, stabilization_table,
                      sweep, write_report)
from .linalg import DEFAULT_SEED
from .matrices import mult_matrix
from .sympoly import Partition, complete_homogeneous, elementary, normal_form, schur

log = logging.getLogger("maxrank")

EXIT_DISAGREE = 1
EXIT_REFUSED = 2


def _lam(text: Optional[str]):
    if text is None:
        return None
    return tuple(int(x) for x in text.split(",") if x.strip())


def _k(text: Optional[str]):
    if text is None or text == "d":
        return None
    return int(text)


def _options(args) -> RankOptions:
    return RankOptions(seed=args.seed)


def _mode(args) -> str:
    return FULL if args.full else args.mode


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    p = make_params(args.family, args.n, args.d, k=_k(args.k), t=args.t, lam=_lam(args.lam))
    rec = run_cell(p, _mode(args), _options(args), args.cap, args.formula_only)
    if rec.get("skip") and not args.formula_only:
        print(f"refusing: {rec['skip']}; rerun with --formula-only or a larger --cap", file=sys.stderr)
        return EXIT_REFUSED
    if args.print_poly:
        rec["poly"] = multiplier(p).to_text()
    _emit(json.dumps(rec, indent=2) + "\n", args.out)
    return EXIT_DISAGREE if rec["agreement"] is False else 0


def cmd_sweep(args) -> int:
    ns = parse_range(args.n)
    ds = parse_range(args.d)
    ks = None
    if args.k:
        ks = ["d" if x.strip() == "d" else x for x in args.k.split(",")]
        ks = [y for x in ks for y in (["d"] if x == "d" else parse_range(x))]
    ts = parse_range(args.t) if args.t else None
    cells = grid_cells(args.family, ns, ds, ks, ts, args.lam)
    grid = {"family": args.family, "n": args.n, "d": args.d, "k": args.k, "t": args.t,
            "lambda": args.lam}
    report = sweep(cells, _mode(args), args.seed, args.cap, args.jobs, args.formula_only,
                   args.timings, grid)
    if args.out:
        for path in write_report(report, args.out):
            print(f"wrote {path}", file=sys.stderr)
    elif args.csv:
        sys.stdout.write(report_csv(report))
    else:
        sys.stdout.write(report_json(report))
    s = report["summary"]
    print(f"{s['cells']} cells: {s['agree']} agree, {s['disagree']} disagree, "
          f"{s['undetermined']} undetermined, {s['skipped']} skipped", file=sys.stderr)
    for cmd in report["reproduce"]:
        print(f"reproduce: {cmd}", file=sys.stderr)
    return EXIT_DISAGREE if s["disagree"] else 0


def cmd_failure_series(args) -> int:
    p = make_params(args.family, args.n, args.d, k=_k(args.k), t=args.t, lam=_lam(args.lam))
    try:
        rec = failure_series_record(p, _options(args), args.cap)
    except Infeasible as ex:
        print(f"refusing: {ex}", file=sys.stderr)
        return EXIT_REFUSED
    _emit(json.dumps(rec, indent=2) + "\n", args.out)
    return 0


def cmd_matrix_image(args) -> int:
    spec = AlgebraSpec(args.n, args.d)
    k = int(args.k)
    e = spec.socle_degree
    if args.degree is None:
        if (e - k) % 2 or k > e:
            print(f"n(d-1) - k = {e - k} is not a nonnegative even number; pass --degree i "
                  f"with 0 <= i <= {e - k}", file=sys.stderr)
            return EXIT_REFUSED
        i = (e - k) // 2
    else:
        i = args.degree
    M = mult_matrix(complete_homogeneous(args.n, k), spec, i)
    if min(M.shape) > args.cap:
        print(f"refusing: {M.shape[0]}x{M.shape[1]} image exceeds cap {args.cap}", file=sys.stderr)
        return EXIT_REFUSED
    _emit(M.to_pbm(), args.out)
    print(f"h_{k} on n={args.n}, d={args.d}: degree {i} -> {i + k}, "
          f"{M.shape[0]}x{M.shape[1]}", file=sys.stderr)
    return 0


def cmd_stabilize(args) -> int:
    ds = parse_range(args.d) if args.d else []
    try:
        rows = stabilization_table(args.family, args.n, ds, _k(args.k), args.terms,
                                   _options(args), args.cap)
    except Infeasible as ex:
        print(f"refusing: {ex}", file=sys.stderr)
        return EXIT_REFUSED
    _emit(format_stabilization(rows), args.out)
    return 0


def cmd_witness_check(args) -> int:
    from . import inverse_system as inv

    n, d = args.n, args.d
    spec = AlgebraSpec(n, d)
    out = {"family": args.family, "n": n, "d": d}
    try:
        if args.family in ("elementary", "complete"):
            if args.family == "elementary":
                F, f = inv.e_witness(n, d), elementary(n, d)
            else:
                F, f = inv.h_witness(n, d), complete_homogeneous(n, d)
            D = F.degree()
            out.update(kind="dual-form", degree=D, witness=F.to_text(),
                       self_check="passed")
            # second route: the quotient must be nonzero in degree D
            if min(spec.dim(D), spec.dim(D - d)) <= args.cap:
                qd = quotient_series(f, spec, _options(args))[D]
                out["quotient_dim_at_degree"] = qd
                out["oracle_confirms"] = qd > 0
        elif args.family == "schur":
            lam = Partition(_lam(args.lam) or ())
            if n == 2:
                a, b = lam.padded(2)
                w = inv.schur2_kernel_witness(a, b, d)
            else:
                w = inv.reducible_schur_witness(lam, n, d)
            s = schur(lam, n)
            M = mult_matrix(s, spec, w.degree())
            wa = normal_form(w, spec)
            vec = [wa.coeff(m) for m in M.cols]
            out.update(kind="kernel-element", degree=w.degree(), witness=w.to_text(),
                       self_check="passed", oracle_confirms=not any(M.matvec(vec)))
        else:
            print(f"no witness construction for family {args.family}", file=sys.stderr)
            return EXIT_REFUSED
    except inv.WitnessError as ex:
        print(f"no witness: {ex}", file=sys.stderr)
        return EXIT_REFUSED
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return 0 if out.get("oracle_confirms", True) else EXIT_DISAGREE


def _common(p: argparse.ArgumentParser, grid: bool = False):
    typ = str if grid else int
    rng = " (value, lo:hi or a,b,c)" if grid else ""
    p.add_argument("--n", type=typ, required=True, help="number of variables" + rng)
    p.add_argument("--d", type=str if grid else int, required=True, help="exponent of the x_i^d" + rng)
    p.add_argument("--k", type=str, default=None,
                   help="degree of the multiplier; 'd' means k = d (default for elementary/complete)")
    p.add_argument("--t", type=typ, default=None, help="power for power-sum-power")
    p.add_argument("--lambda", dest="lam", default=None,
                   help="partition a,b,c" + ("; several separated by ';', or box:N" if grid else ""))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the modular primes")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest matrix dimension the oracle accepts")
    p.add_argument("--out", default=None, help="output path")


def _mode_flags(p):
    p.add_argument("--mode", choices=[FAST, FULL], default=FAST)
    p.add_argument("--full", action="store_true", help="same as --mode full")
    p.add_argument("--formula-only", action="store_true", help="skip the rank oracle")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maxrank", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="classify one cell and cross-check with the rank oracle")
    p.add_argument("--family", choices=FAMILIES, required=True)
    _common(p)
    _mode_flags(p)
    p.add_argument("--print-poly", action="store_true", help="include the multiplier in the output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="run a grid and write JSON + CSV reports")
    p.add_argument("--family", choices=FAMILIES, required=True)
    _common(p, grid=True)
    _mode_flags(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", action="store_true", help="print CSV instead of JSON when --out is absent")
    p.add_argument("--timings", action="store_true", help="record wall time per cell (breaks byte-identity)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("failure-series", help="HS(A/(f)) minus the expected series")
    p.add_argument("--family", choices=FAMILIES, required=True)
    _common(p)
    p.set_defaults(func=cmd_failure_series)

    p = sub.add_parser("matrix-image", help="h_k multiplication matrix as a P1 bitmap")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--degree", type=int, default=None, help="source degree (default: the square case)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_matrix_image)

    p = sub.add_parser("stabilize", help="leading failure-series coefficients across d")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=str, default="", help="d values: lo:hi or a,b,c")
    p.add_argument("--k", type=str, default=None)
    p.add_argument("--terms", type=int, default=6)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("witness-check", help="build and verify an explicit failure witness")
    p.add_argument("--family", choices=("elementary", "complete", "schur"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_witness_check)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
