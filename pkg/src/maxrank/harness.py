"""Formula-vs-oracle cells, sweeps and report writers behind the CLI."""
from __future__ import annotations

import csv
import io
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import __version__
from .algebra import AlgebraSpec, critical_degree
from .classifiers import (SRC_LEFSCHETZ, SRC_TRIVIAL, Status, Verdict, conjecture_e,
                          conjecture_h, conjecture_schur3, e_degree_d_failure,
                          h_degree_d_failure, power_sum_classifier,
                          power_sum_power_classifier, schur2_classifier,
                          schur_reducible_failure)
from .engine import FAST, FULL, RankOptions, failure_series, is_max_rank, series_dict
from .sympoly import (Partition, SparsePoly, complete_homogeneous, elementary, power_sum,
                      schur)

SCHEMA = "maxrank.sweep/v1"
FAMILIES = ("power-sum", "power-sum-power", "elementary", "complete", "schur")
DEFAULT_CAP = 4000


class Infeasible(RuntimeError):
    """Oracle matrix larger than the configured cap."""

    def __init__(self, shape: Tuple[int, int], cap: int, degree: int):
        self.shape = shape
        self.cap = cap
        self.degree = degree
        rows, cols = shape
        mb = rows * cols * 8 / 2**20
        super().__init__(
            f"oracle infeasible: {rows}x{cols} matrix at degree {degree} "
            f"(smaller dimension {min(shape)} > cap {cap}, ~{mb:.0f} MiB dense per prime)")


# cells ----------------------------------------------------------------------


def make_params(family: str, n: int, d: int, k: Optional[int] = None, t: Optional[int] = None,
                lam: Optional[Sequence[int]] = None) -> Dict:
    """Normalized parameter dict; key order is fixed so reports are stable."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    p: Dict = {"family": family, "n": n}
    if family == "schur":
        if lam is None:
            raise ValueError("schur family needs --lambda")
        p["lambda"] = list(Partition(lam).nonzero())
    else:
        if k is None:
            if family in ("elementary", "complete"):
                k = d
            else:
                raise ValueError(f"{family} needs --k")
        p["k"] = k
    if family == "power-sum-power":
        if t is None:
            raise ValueError("power-sum-power needs --t")
        p["t"] = t
    p["d"] = d
    return p


def multiplier(p: Dict) -> SparsePoly:
    fam, n = p["family"], p["n"]
    if fam == "power-sum":
        return power_sum(n, p["k"])
    if fam == "power-sum-power":
        return power_sum(n, p["k"]) ** p["t"]
    if fam == "elementary":
        return elementary(n, p["k"])
    if fam == "complete":
        return complete_homogeneous(n, p["k"])
    return schur(p["lambda"], n)


def multiplier_deg(p: Dict) -> int:
    if p["family"] == "schur":
        return sum(p["lambda"])
    if p["family"] == "power-sum-power":
        return p["k"] * p["t"]
    return p["k"]


def _two_var_partition(p: Dict) -> Optional[Tuple[int, int]]:
    """The (a, b) with f = s_(a,b)(x, y), or None when f is zero."""
    fam, k = p["family"], p.get("k")
    if fam == "schur":
        lam = p["lambda"]
        return None if len(lam) > 2 else tuple(Partition(lam).padded(2))
    if fam == "elementary":
        return None if k > 2 else (1, k - 1) if k == 2 else (1, 0)
    return (k, 0)


def formula_verdict(p: Dict) -> Verdict:
    """The closed-form prediction for a cell (NotDetermined when none applies)."""
    fam, n, d = p["family"], p["n"], p["d"]
    k = multiplier_deg(p)
    e = n * (d - 1)
    if fam == "power-sum" and n >= 2:
        return power_sum_classifier(n, p["k"], d)
    if fam == "power-sum-power" and n >= 2:
        return power_sum_power_classifier(n, p["k"], p["t"], d)
    if k > e:
        return Verdict(Status.TRIVIALLY_MAX_RANK, SRC_TRIVIAL)
    if fam == "elementary" and k > n or fam == "schur" and len(p["lambda"]) > n:
        return Verdict(Status.TRIVIALLY_FAILS, SRC_TRIVIAL, {"reason": "multiplier is zero"})
    if k == 1 and fam != "schur" or fam == "schur" and p["lambda"] == [1]:
        return Verdict(Status.MAX_RANK, SRC_LEFSCHETZ)
    if n == 2 and fam in ("elementary", "complete", "schur"):
        a, b = _two_var_partition(p)
        return schur2_classifier(a, b, d)
    if n >= 3 and fam == "elementary" and k == d:
        v = e_degree_d_failure(n, d)
        return v if v.status == Status.FAILS else conjecture_e(n, d)
    if n >= 3 and fam == "complete" and k == d:
        v = h_degree_d_failure(n, d)
        return v if v.status == Status.FAILS else conjecture_h(n, d)
    if n >= 3 and fam == "schur":
        v = schur_reducible_failure(p["lambda"], n, d)
        if v.status == Status.FAILS or n > 3:
            return v
        return conjecture_schur3(p["lambda"], d)
    return Verdict(Status.NOT_DETERMINED, "none", {"reason": "no criterion covers this cell"})


def oracle_shape(spec: AlgebraSpec, k: int, mode: str = FAST) -> Tuple[int, Tuple[int, int]]:
    """(degree, shape) of the largest matrix the oracle will eliminate."""
    e = spec.socle_degree
    if k < 1 or k > e:
        return 0, (0, 0)
    if mode == FULL:
        i = max(range(e - k + 1), key=lambda i: min(spec.dim(i), spec.dim(i + k)))
    else:
        i = critical_degree(spec, k)
    return i, (spec.dim(i + k), spec.dim(i))


def check_feasible(spec: AlgebraSpec, k: int, cap: int, mode: str = FAST):
    i, shape = oracle_shape(spec, k, mode)
    if min(shape) > cap:
        raise Infeasible(shape, cap, i)


def oracle_verdict(p: Dict, mode: str = FAST, options: RankOptions = RankOptions(),
                   cap: int = DEFAULT_CAP) -> Dict:
    spec = AlgebraSpec(p["n"], p["d"])
    f = multiplier(p)
    k = multiplier_deg(p)
    check_feasible(spec, k, cap, mode)
    if f.is_zero():
        ok = k > spec.socle_degree
        return {"status": "TriviallyMaxRank" if ok else "TriviallyFails", "is_max_rank": ok,
                "provenance": "trivial"}
    return is_max_rank(f, spec, mode, options).as_dict()


def run_cell(p: Dict, mode: str = FAST, options: RankOptions = RankOptions(),
             cap: int = DEFAULT_CAP, formula_only: bool = False, timings: bool = False) -> Dict:
    """Both verdicts for one cell plus the agreement flag."""
    t0 = time.perf_counter()
    fv = formula_verdict(p)
    rec: Dict = {"params": p, "formula": fv.as_dict()}
    if formula_only:
        rec["oracle"] = None
        rec["skip"] = "formula-only"
    else:
        try:
            rec["oracle"] = oracle_verdict(p, mode, options, cap)
        except Infeasible as ex:
            rec["oracle"] = None
            rec["skip"] = str(ex)
    pred = fv.status.predicts()
    if rec["oracle"] is None or pred is None:
        rec["agreement"] = None
    else:
        rec["agreement"] = pred == rec["oracle"]["is_max_rank"]
    if timings:
        rec["wall_time"] = round(time.perf_counter() - t0, 4)
    return rec


def repro_command(p: Dict, mode: str, seed: int) -> str:
    parts = ["maxrank", "check", "--family", p["family"], "--n", str(p["n"])]
    if "lambda" in p:
        parts += ["--lambda", ",".join(map(str, p["lambda"]))]
    if "k" in p:
        parts += ["--k", str(p["k"])]
    if "t" in p:
        parts += ["--t", str(p["t"])]
    parts += ["--d", str(p["d"]), "--mode", mode, "--seed", str(seed)]
    return " ".join(parts)


# grids ------------------------------------------------------------------------


def parse_range(text: str) -> List[int]:
    """``5``, ``2:6`` (inclusive) or ``2,4,7``."""
    text = text.strip()
    out: List[int] = []
    for piece in text.split(","):
        if ":" in piece:
            lo, hi = piece.split(":")
            out.extend(range(int(lo), int(hi) + 1))
        elif piece:
            out.append(int(piece))
    return out


def parse_lambdas(text: str, n: int) -> List[Tuple[int, ...]]:
    """``3,1``, ``3,1;2,2`` or ``box:N`` (all partitions with parts <= N and at most n parts)."""
    text = text.strip()
    if text.startswith("box:"):
        top = int(text[4:])
        out = []
        for lam in itertools.combinations_with_replacement(range(top, -1, -1), n):
            out.append(tuple(Partition(lam).nonzero()))
        return sorted(set(out), key=lambda l: (sum(l), l))
    return [tuple(int(x) for x in chunk.split(",") if x.strip()) for chunk in text.split(";")]


def grid_cells(family: str, ns: Iterable[int], ds: Iterable[int], ks: Optional[Sequence] = None,
               ts: Optional[Sequence[int]] = None, lambdas: Optional[str] = None) -> List[Dict]:
    """Cells in grid order. ``ks`` may contain the string "d" for k = d.

    Power-sum cells need k < d; cells outside that range are dropped.
    """
    ds = list(ds)
    cells = []
    for n in ns:
        if family == "schur":
            for lam in parse_lambdas(lambdas or "1", n):
                for d in ds:
                    cells.append(make_params(family, n, d, lam=lam))
            continue
        for k in (ks or ["d"]):
            for t in (ts or [None]):
                for d in ds:
                    kk = d if k == "d" else int(k)
                    if family.startswith("power-sum") and kk >= d:
                        continue
                    cells.append(make_params(family, n, d, k=kk, t=t))
    return cells


def _cell_job(args):
    return run_cell(*args)


def sweep(cells: Sequence[Dict], mode: str = FAST, seed: Optional[int] = None, cap: int = DEFAULT_CAP,
          jobs: int = 1, formula_only: bool = False, timings: bool = False,
          grid: Optional[Dict] = None) -> Dict:
    """Run every cell; results keep grid order whatever ``jobs`` is."""
    options = RankOptions() if seed is None else RankOptions(seed=seed)
    args = [(p, mode, options, cap, formula_only, timings) for p in cells]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_cell_job, args, chunksize=1))
    else:
        records = [_cell_job(a) for a in args]
    summary = {"cells": len(records), "agree": 0, "disagree": 0, "undetermined": 0, "skipped": 0}
    repro = []
    for rec in records:
        if rec.get("skip"):
            summary["skipped"] += 1
        elif rec["agreement"] is None:
            summary["undetermined"] += 1
        elif rec["agreement"]:
            summary["agree"] += 1
        else:
            summary["disagree"] += 1
            repro.append(repro_command(rec["params"], mode, options.seed))
    return {
        "schema": SCHEMA,
        "version": __version__,
        "seed": options.seed,
        "mode": mode,
        "cap": cap,
        "grid": grid or {},
        "summary": summary,
        "reproduce": repro,
        "cells": records,
    }


CSV_FIELDS = ("family", "n", "k", "t", "lambda", "d", "formula_status", "formula_source",
              "oracle_status", "oracle_provenance", "agreement", "skip", "failure_series")


def report_csv(report: Dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for rec in report["cells"]:
        p = rec["params"]
        o = rec["oracle"] or {}
        fs = o.get("failure_series")
        w.writerow([
            p["family"], p["n"], p.get("k", ""), p.get("t", ""),
            " ".join(map(str, p.get("lambda", []))), p["d"],
            rec["formula"]["status"], rec["formula"]["source"],
            o.get("status", ""), o.get("provenance", ""),
            "" if rec["agreement"] is None else str(rec["agreement"]).lower(),
            rec.get("skip", ""), fs["text"] if fs else "",
        ])
    return buf.getvalue()


def report_json(report: Dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def write_report(report: Dict, out: str) -> Tuple[str, str]:
    """Write ``<stem>.json`` and ``<stem>.csv``; returns both paths."""
    stem = out[:-5] if out.endswith(".json") else out[:-4] if out.endswith(".csv") else out
    paths = (stem + ".json", stem + ".csv")
    for path, text in zip(paths, (report_json(report), report_csv(report))):
        try:
            with open(path, "w") as fh:
                fh.write(text)
        except OSError as ex:
            raise OSError(f"cannot write report to {path}: {ex.strerror}") from ex
    return paths


# failure series tables ------------------------------------------------------------


def failure_series_record(p: Dict, options: RankOptions = RankOptions(), cap: int = DEFAULT_CAP) -> Dict:
    spec = AlgebraSpec(p["n"], p["d"])
    f = multiplier(p)
    if f.is_zero():
        raise ValueError("multiplier is zero in this ring; its failure series is HS(A) minus the expected series")
    check_feasible(spec, multiplier_deg(p), cap, FULL)
    return {"params": p, "failure_series": series_dict(failure_series(f, spec, options))}


def stabilization_table(family: str, n: int, ds: Sequence[int], k: Optional[int] = None,
                        terms: int = 6, options: RankOptions = RankOptions(),
                        cap: int = DEFAULT_CAP) -> List[Dict]:
    """Leading failure-series coefficients across d, content pulled out."""
    from math import gcd

    rows = []
    for d in ds:
        p = make_params(family, n, d, k=k)
        fs = failure_series_record(p, options, cap)["failure_series"]
        coeffs = fs["coeffs"]
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        prefix = [c // g for c in coeffs[:terms]] if g else []
        rows.append({"d": d, "offset": fs["offset"], "content": g, "prefix": prefix,
                     "truncated": len(coeffs) > terms})
    return rows


def format_stabilization(rows: Sequence[Dict]) -> str:
    lines = []
    for r in rows:
        if not r["content"]:
            lines.append(f"d={r['d']:<3} 0")
            continue
        body = ",".join(map(str, r["prefix"])) + (",..." if r["truncated"] else "")
        lines.append(f"d={r['d']:<3} t^{r['offset']}  {r['content']}*({body})")
    return "\n".join(lines) + ("\n" if lines else "")
