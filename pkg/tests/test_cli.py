"""Command line behavior: artifacts, exit codes, logging, determinism."""
import csv
import json
import shutil
import subprocess
import sys

import pytest

from ftexpfit import ExpModel, ExpTerm, Point2, fixture_path
from ftexpfit.cli import main
from ftexpfit.io import read_model, read_nodes_csv, write_model

SERIES = fixture_path("czech_inflation.csv")
NINE = fixture_path("table2_nine.csv")
TEN = fixture_path("table2_ten.csv")
MODEL = fixture_path("eq2_model.json")

# closed under conjugation so the fitted curve stays real on the axis
NINE_EXPONENTS = [-0.3, -0.2, -0.1, 0.0, 0.1, [0.0, 1.0], [0.0, -1.0], [0.0, 2.2], [0.0, -2.2]]


def write_exponents(path, values=NINE_EXPONENTS):
    path.write_text(json.dumps(values))
    return str(path)


def test_smooth_writes_nodes_deterministically(tmp_path, capsys):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert main(["smooth", "--input", SERIES, "--output", str(first)]) == 0
    assert main(["smooth", "--input", SERIES, "--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert len(read_nodes_csv(str(first))) == 9
    assert "9 nodes" in capsys.readouterr().out


def test_smooth_missing_input_is_input_error(tmp_path, capsys):
    rc = main(["smooth", "--input", str(tmp_path / "absent.csv"), "--output", str(tmp_path / "o.csv")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_smooth_malformed_input_is_input_error(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,value\n1,2\nnot-a-number,3\n")
    assert main(["smooth", "--input", str(bad), "--output", str(tmp_path / "o.csv")]) == 2


def test_fit_given_exponents_round_trips(tmp_path):
    out = tmp_path / "model.json"
    rc = main(["fit", "--input", TEN, "--output", str(out), "--exponents", MODEL])
    assert rc == 0
    model = read_model(str(out))
    assert len(model.terms) == 10
    assert model.fit_residual < 1e-8


def test_fit_accepts_bare_exponent_list(tmp_path):
    nodes = tmp_path / "nodes.csv"
    assert main(["smooth", "--input", SERIES, "--output", str(nodes)]) == 0
    out = tmp_path / "model.json"
    rc = main(["fit", "--input", str(nodes), "--output", str(out),
               "--exponents", write_exponents(tmp_path / "lams.json")])
    assert rc == 0
    assert read_model(str(out)).fit_residual < 1e-8


def test_fit_requires_an_exponent_source(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["fit", "--input", TEN, "--output", str(tmp_path / "m.json")])
    assert excinfo.value.code == 2


def test_fit_rejects_symmetrize_with_given_exponents(tmp_path):
    rc = main(["fit", "--input", TEN, "--output", str(tmp_path / "m.json"),
               "--exponents", MODEL, "--symmetrize"])
    assert rc == 2


def test_fit_estimate_order_must_match_node_count(tmp_path):
    rc = main(["fit", "--input", TEN, "--output", str(tmp_path / "m.json"), "--estimate", "4"])
    assert rc == 2


def test_fit_unreachable_tolerance_is_numeric_error(tmp_path, capsys):
    rc = main(["fit", "--input", TEN, "--output", str(tmp_path / "m.json"),
               "--exponents", MODEL, "--tol", "1e-30"])
    assert rc == 1
    assert "residual" in capsys.readouterr().err


def test_eval_outputs_are_byte_identical_across_runs(tmp_path):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert main(["eval", "--model", MODEL, "--grid", "1:11:0.25", "--output", str(first)]) == 0
    assert main(["eval", "--model", MODEL, "--grid", "1:11:0.25", "--output", str(second)]) == 0
    data = first.read_bytes()
    assert data == second.read_bytes()
    assert data.startswith(b"t,value,imag_residual\n")
    assert len(data.splitlines()) == 1 + 41


def test_eval_rejects_malformed_grid(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["eval", "--model", MODEL, "--grid", "1:11", "--output", str(tmp_path / "g.csv")])
    assert excinfo.value.code == 2


def test_eval_overflow_is_numeric_error(tmp_path):
    runaway = ExpModel(
        terms=(ExpTerm(coefficient=1.0 + 0j, exponent=300.0 + 0j),),
        nodes=(Point2(0.0, 1.0),),
        fit_residual=0.0,
    )
    path = tmp_path / "runaway.json"
    write_model(str(path), runaway)
    rc = main(["eval", "--model", str(path), "--grid", "0:10:1", "--output", str(tmp_path / "g.csv")])
    assert rc == 1


def test_run_with_ready_nodes(tmp_path):
    outdir = tmp_path / "out"
    rc = main(["run", "--nodes", TEN, "--output-dir", str(outdir),
               "--exponents", MODEL, "--grid", "1:11:0.5"])
    assert rc == 0
    assert (outdir / "model.json").exists()
    assert (outdir / "grid.csv").exists()
    assert not (outdir / "nodes.csv").exists()


def test_run_from_series_writes_all_artifacts(tmp_path, capsys):
    outdir = tmp_path / "out"
    rc = main(["run", "--input", SERIES, "--output-dir", str(outdir),
               "--exponents", write_exponents(tmp_path / "lams.json")])
    assert rc == 0
    assert len(read_nodes_csv(str(outdir / "nodes.csv"))) == 9
    model = read_model(str(outdir / "model.json"))
    assert len(model.terms) == 9
    with open(outdir / "grid.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 101
    assert "fit residual" in capsys.readouterr().out


def test_run_requires_series_or_nodes(tmp_path):
    rc = main(["run", "--output-dir", str(tmp_path / "out"),
               "--exponents", write_exponents(tmp_path / "lams.json")])
    assert rc == 2


def test_verify_paper_passes_on_bundled_data(capsys):
    assert main(["verify-paper"]) == 0
    out, err = capsys.readouterr()
    assert out.count("BINDING PASS") == 2
    assert "ADVISORY PASS" in out
    assert out.count("KNOWN DISCREPANCY") == 2
    assert out.strip().endswith("verify-paper: PASS")


def test_verify_paper_names_the_tampered_row(tmp_path, capsys):
    for name in ("czech_inflation.csv", "table2_nine.csv", "table2_ten.csv", "eq2_model.json"):
        shutil.copy(fixture_path(name), tmp_path / name)
    tampered = tmp_path / "table2_nine.csv"
    rows = list(csv.reader(tampered.open()))
    rows[4][1] = repr(float(rows[4][1]) + 1e-3)
    with tampered.open("w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    assert main(["verify-paper", "--data-dir", str(tmp_path)]) == 1
    out = capsys.readouterr().out
    assert "BINDING FAIL" in out
    assert "node 3" in out
    assert out.strip().endswith("verify-paper: FAIL")


def test_plot_writes_a_figure(tmp_path):
    figure = tmp_path / "fig.png"
    rc = main(["smooth", "--input", SERIES, "--output", str(tmp_path / "n.csv"),
               "--plot", str(figure)])
    assert rc == 0
    assert figure.stat().st_size > 0


def test_log_env_controls_warning_visibility(tmp_path, monkeypatch, capsys):
    # this series smooths to nodes whose abscissae go backwards
    wobble = tmp_path / "wobble.csv"
    wobble.write_text("t,value\n0,0\n1,6\n2,3\n3,12\n")

    monkeypatch.setenv("FT_EXPFIT_LOG", "warn")
    assert main(["smooth", "--input", str(wobble), "--output", str(tmp_path / "a.csv")]) == 0
    assert "MonotonicityWarning" in capsys.readouterr().err

    monkeypatch.setenv("FT_EXPFIT_LOG", "off")
    assert main(["smooth", "--input", str(wobble), "--output", str(tmp_path / "b.csv")]) == 0
    assert capsys.readouterr().err == ""


def test_unknown_log_level_falls_back_to_warn(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("FT_EXPFIT_LOG", "banana")
    assert main(["smooth", "--input", SERIES, "--output", str(tmp_path / "n.csv")]) == 0
    assert "FT_EXPFIT_LOG" in capsys.readouterr().err


def test_module_entry_point_runs_in_a_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "ftexpfit.cli", "verify-paper"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert "verify-paper: PASS" in proc.stdout
