import csv
import io
import json

import pytest

from maxrank import harness
from maxrank.algebra import AlgebraSpec, hilbert_series
from maxrank.cli import main
from maxrank.harness import (Infeasible, formula_verdict, grid_cells, make_params,
                             parse_lambdas, parse_range, run_cell, sweep)


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_parse_range():
    assert parse_range("5") == [5]
    assert parse_range("2:5") == [2, 3, 4, 5]
    assert parse_range("2,4,7") == [2, 4, 7]
    assert parse_range("2:3,9") == [2, 3, 9]


def test_parse_lambdas():
    assert parse_lambdas("3,1", 2) == [(3, 1)]
    assert parse_lambdas("3,1;2,2", 2) == [(3, 1), (2, 2)]
    box = parse_lambdas("box:2", 2)
    assert box == [(), (1,), (1, 1), (2,), (2, 1), (2, 2)]


def test_make_params_defaults_and_errors():
    assert make_params("elementary", 4, 3) == {"family": "elementary", "n": 4, "k": 3, "d": 3}
    with pytest.raises(ValueError):
        make_params("power-sum", 3, 5)
    with pytest.raises(ValueError):
        make_params("schur", 3, 5)
    with pytest.raises(ValueError):
        make_params("bogus", 3, 5)


def test_grid_cells_skip_power_sum_k_at_least_d():
    cells = grid_cells("power-sum", [2], range(2, 6), [3])
    assert [c["d"] for c in cells] == [4, 5]


@pytest.mark.parametrize("params,status", [
    (dict(family="elementary", n=2, d=5, k=2), "MaxRank"),
    (dict(family="complete", n=2, d=3, k=2), "Fails"),
    (dict(family="elementary", n=3, d=4, k=4), "TriviallyFails"),
    (dict(family="elementary", n=5, d=3, k=3), "Fails"),
    (dict(family="elementary", n=6, d=3, k=3), "ConjecturalMaxRank"),
    (dict(family="complete", n=3, d=4, k=4), "ConjecturalMaxRank"),
    (dict(family="complete", n=3, d=5, k=5), "Fails"),
    (dict(family="complete", n=4, d=5, k=1), "MaxRank"),
    (dict(family="complete", n=4, d=5, k=2), "NotDetermined"),
    (dict(family="schur", n=3, d=7, lambda_=(2, 1, 1)), "Fails"),
    (dict(family="schur", n=3, d=9, lambda_=(3, 1)), "ConjecturalMaxRank"),
    (dict(family="schur", n=2, d=7, lambda_=(3, 1)), "Fails"),
    (dict(family="power-sum", n=2, d=2, k=3), "TriviallyMaxRank"),
])
def test_formula_dispatch(params, status):
    lam = params.pop("lambda_", None)
    p = make_params(params.pop("family"), params.pop("n"), params.pop("d"), lam=lam, **params)
    assert formula_verdict(p).status.value == status


def test_run_cell_agreement_and_skip():
    rec = run_cell(make_params("power-sum", 3, 6, k=2))
    assert rec["agreement"] is True and rec["oracle"]["status"] == "Fails"
    rec = run_cell(make_params("elementary", 7, 6), cap=100)
    assert rec["oracle"] is None and "infeasible" in rec["skip"] and rec["agreement"] is None
    rec = run_cell(make_params("complete", 4, 5, k=2))
    assert rec["agreement"] is None and rec["oracle"]["is_max_rank"] in (True, False)


def test_sweep_deterministic_and_ordered():
    cells = grid_cells("power-sum", [2, 3], range(3, 8), [2])
    r1 = harness.report_json(sweep(cells, seed=5))
    r2 = harness.report_json(sweep(cells, seed=5))
    assert r1 == r2
    rep = json.loads(r1)
    assert rep["schema"] == "maxrank.sweep/v1" and rep["seed"] == 5
    assert [c["params"] for c in rep["cells"]] == cells
    assert rep["summary"]["disagree"] == 0


def test_sweep_jobs_match_serial():
    cells = grid_cells("schur", [2], range(3, 6), lambdas="3,1;2,1")
    serial = harness.report_json(sweep(cells, jobs=1))
    parallel = harness.report_json(sweep(cells, jobs=2))
    assert serial == parallel


def test_disagreement_sets_exit_code(monkeypatch, capsys):
    from maxrank.classifiers import Status, Verdict

    monkeypatch.setattr(harness, "formula_verdict", lambda p: Verdict(Status.MAX_RANK, "stub"))
    rep = sweep([make_params("power-sum", 3, 6, k=2)])
    assert rep["summary"]["disagree"] == 1
    assert rep["reproduce"] == ["maxrank check --family power-sum --n 3 --k 2 --d 6 --mode fast --seed 20240601"]
    rc, _, err = run(capsys, "sweep", "--family", "power-sum", "--n", "3", "--k", "2", "--d", "6")
    assert rc == 1 and "reproduce: maxrank check" in err


def test_cli_check_examples(capsys):
    rc, out, _ = run(capsys, "check", "--family", "power-sum", "--n", "3", "--k", "2", "--d", "6")
    rec = json.loads(out)
    assert rc == 0 and rec["formula"]["status"] == "Fails" and rec["oracle"]["status"] == "Fails"
    rc, out, _ = run(capsys, "check", "--family", "schur", "--lambda", "3,1", "--n", "2", "--d", "7")
    assert json.loads(out)["oracle"]["is_max_rank"] is False
    rc, out, _ = run(capsys, "check", "--family", "complete", "--n", "2", "--k", "2", "--d", "4", "--full")
    rec = json.loads(out)
    assert rec["oracle"]["is_max_rank"] is True and rec["oracle"]["failure_series"]["coeffs"] == []


def test_cli_check_print_poly(capsys):
    rc, out, _ = run(capsys, "check", "--family", "complete", "--n", "2", "--k", "2", "--d", "4",
                     "--formula-only", "--print-poly")
    rec = json.loads(out)
    assert rec["poly"] == "1*x1^2 + 1*x1^1*x2^1 + 1*x2^2"
    assert rec["oracle"] is None and rec["skip"] == "formula-only"


def test_cli_refuses_infeasible(capsys):
    rc, _, err = run(capsys, "check", "--family", "elementary", "--n", "7", "--d", "6", "--cap", "500")
    assert rc == 2 and "refusing" in err and "x" in err
    rc, out, _ = run(capsys, "check", "--family", "elementary", "--n", "7", "--d", "6", "--formula-only")
    assert rc == 0 and json.loads(out)["formula"]["status"] == "Fails"


def test_cli_sweep_writes_json_and_csv(tmp_path, capsys):
    out = tmp_path / "rep.json"
    rc, _, err = run(capsys, "sweep", "--family", "schur", "--n", "2", "--lambda", "box:3",
                     "--d", "2:6", "--out", str(out))
    assert rc == 0
    rep = json.loads(out.read_text())
    rows = list(csv.DictReader(io.StringIO((tmp_path / "rep.csv").read_text())))
    assert len(rows) == rep["summary"]["cells"] == len(rep["cells"])
    assert rep["summary"]["disagree"] == 0
    assert rows[0]["family"] == "schur"


def test_cli_sweep_io_error(capsys):
    rc, _, err = run(capsys, "sweep", "--family", "power-sum", "--n", "2", "--k", "2", "--d", "3",
                     "--out", "/nonexistent/dir/rep.json")
    assert rc == 2 and "/nonexistent/dir/rep.json" in err


def test_cli_failure_series(capsys):
    rc, out, _ = run(capsys, "failure-series", "--family", "elementary", "--n", "5", "--k", "4", "--d", "5")
    fs = json.loads(out)["failure_series"]
    assert (fs["offset"], fs["coeffs"], fs["text"]) == (11, [10, 50, 10], "10t^11(1+5t+t^2)")
    rc, out, _ = run(capsys, "failure-series", "--family", "complete", "--n", "2", "--k", "2", "--d", "3")
    assert json.loads(out)["failure_series"]["text"] == "t^3"


def test_cli_matrix_image(tmp_path, capsys):
    out = tmp_path / "m.pbm"
    rc, _, err = run(capsys, "matrix-image", "--n", "4", "--k", "4", "--d", "6", "--out", str(out))
    lines = out.read_text().split("\n")
    assert rc == 0 and lines[0] == "P1"
    w, h = map(int, lines[1].split())
    dim8 = hilbert_series(AlgebraSpec(4, 6))[8]
    assert w == h == dim8 == 125 and "degree 8" in err
    bits = "".join(lines[2:]).replace(" ", "")
    assert len(bits) == w * h and set(bits) <= {"0", "1"}
    rc, out, err = run(capsys, "matrix-image", "--n", "7", "--k", "6", "--d", "3")
    assert out.split("\n")[1] == "161 161" and "degree 4" in err


def test_cli_matrix_image_toeplitz_band(capsys):
    rc, out, _ = run(capsys, "matrix-image", "--n", "2", "--k", "2", "--d", "7", "--degree", "4")
    rows = [l.split() for l in out.strip().split("\n")[2:]]
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            # h_2 from degree 4 to 6 on d = 7: ones exactly on the three central diagonals
            assert (v == "1") == (-2 <= c - r <= 0)


def test_cli_matrix_image_odd_needs_degree(capsys):
    rc, _, err = run(capsys, "matrix-image", "--n", "3", "--k", "2", "--d", "4")
    assert rc == 2 and "--degree" in err and "0 <= i <= 7" in err


def test_cli_stabilize(capsys):
    rc, out, _ = run(capsys, "stabilize", "--family", "elementary", "--n", "5", "--k", "4", "--d", "5,7")
    assert out.splitlines() == ["d=5   t^11  10*(1,5,1)", "d=7   t^15  10*(1,5,14,5,1)"]
    rc, out, _ = run(capsys, "stabilize", "--family", "elementary", "--n", "5", "--k", "4")
    assert rc == 0 and out == ""


def test_cli_witness_check(capsys):
    rc, out, _ = run(capsys, "witness-check", "--family", "complete", "--n", "3", "--d", "5")
    rec = json.loads(out)
    assert rc == 0 and rec["degree"] == 9 and rec["oracle_confirms"] is True
    rc, out, _ = run(capsys, "witness-check", "--family", "schur", "--lambda", "3,0", "--n", "2", "--d", "8")
    rec = json.loads(out)
    assert rec["kind"] == "kernel-element" and rec["oracle_confirms"] is True
    rc, _, err = run(capsys, "witness-check", "--family", "elementary", "--n", "6", "--d", "3")
    assert rc == 2 and "not guaranteed" in err


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "maxrank", "check", "--family", "power-sum", "--n", "2",
                        "--k", "2", "--d", "5"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["agreement"] is True


def test_infeasible_message():
    ex = Infeasible((5000, 4500), 4000, 12)
    assert "5000x4500" in str(ex) and "4500 > cap 4000" in str(ex)
