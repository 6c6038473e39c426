import functools
import json
import math
import subprocess
import sys

import numpy as np
import pytest

import opuclab.cli as cli
import opuclab.sparse as sparse
from opuclab.cli import EXIT_CERT, EXIT_IO, EXIT_OK, EXIT_VALIDATION, main
from opuclab.coeffs import load_sequence
from opuclab.harness import SCHEMAS


@pytest.fixture
def seqfile(tmp_path):
    p = tmp_path / "r.txt"
    assert main(["coeffs", "gen", "--kind", "random", "--seed", "3", "--radius", "0.3",
                 "-o", str(p)]) == EXIT_OK
    return p


def csv_rows(text):
    lines = text.strip().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_gen_and_validate(tmp_path, capsys):
    p = tmp_path / "s.txt"
    assert main(["coeffs", "gen", "--kind", "sparse", "--values", "0.5,0.1-0.2j",
                 "--positions", "3,9", "-o", str(p)]) == EXIT_OK
    seq = load_sequence(p)
    assert seq.positions.tolist() == [3, 9] and seq.values[1] == 0.1 - 0.2j
    assert main(["coeffs", "validate", str(p)]) == EXIT_OK
    assert "kind=sparse entries=2" in capsys.readouterr().out


def test_gen_rejects_out_of_disk(capsys):
    assert main(["coeffs", "gen", "--kind", "explicit", "--values", "0.5,1.0"]) == EXIT_VALIDATION
    assert "unit disk" in capsys.readouterr().err


def test_missing_file_is_io_error(tmp_path):
    assert main(["coeffs", "validate", str(tmp_path / "nope.txt")]) == EXIT_IO


def test_global_seed_and_stdout(capsys):
    assert main(["--seed", "11", "coeffs", "gen", "--kind", "random", "--radius", "0.2"]) == 0
    assert "seed=11" in capsys.readouterr().out


def test_opuc_eval_free_case(tmp_path, capsys):
    p = tmp_path / "z.txt"
    main(["coeffs", "gen", "--kind", "zero", "-o", str(p)])
    assert main(["opuc", "eval", "--seq", str(p), "--n", "3", "--theta", "0.5",
                 "--second-kind"]) == 0
    head, rows = csv_rows(capsys.readouterr().out)
    assert head[-2:] == ["re_psidagger", "im_psidagger"]
    vals = dict(zip(head, map(float, rows[0])))
    assert vals["re_phi"] == pytest.approx(math.cos(1.5)) and vals["re_phistar"] == 1.0
    assert vals["re_psidagger"] == -1.0


def test_kernel_grid_rows(seqfile, tmp_path):
    out = tmp_path / "k.csv"
    assert main(["kernel", "sine-error", "--seq", str(seqfile), "--n", "40", "-o", str(out)]) == 0
    head, rows = csv_rows(out.read_text())
    assert head == ["n", "theta", "re_a", "im_a", "re_b", "im_b", "error"]
    assert len(rows) == 64 * 29


def test_threads_do_not_change_output(seqfile, tmp_path):
    for t in ("1", "3"):
        main(["--threads", t, "kernel", "sine-error", "--seq", str(seqfile), "--n", "300",
              "-o", str(tmp_path / f"k{t}.csv")])
    assert (tmp_path / "k1.csv").read_bytes() == (tmp_path / "k3.csv").read_bytes()


def test_popuc_zeros_with_oracle(seqfile, capsys):
    assert main(["popuc", "zeros", "--seq", str(seqfile), "--n", "20", "--beta", "0,1",
                 "--oracle"]) == EXIT_OK
    head, rows = csv_rows(capsys.readouterr().out)
    assert head == ["index", "theta", "oracle_theta"] and len(rows) == 20


def test_popuc_oracle_mismatch_exit_code(seqfile, monkeypatch):
    monkeypatch.setattr(cli, "cmv_zero_oracle", lambda spec: np.linspace(0, 6, spec.n))
    assert main(["popuc", "zeros", "--seq", str(seqfile), "--n", "5", "--oracle"]) == EXIT_CERT


def test_popuc_clock_and_svg(seqfile, tmp_path):
    out = tmp_path / "c.csv"
    assert main(["--out-dir", str(tmp_path / "o"), "popuc", "clock", "--seq", str(seqfile),
                 "--n-list", "10,20,40", "--j", "-1", "--beta-random", "4", "--svg", "c.svg",
                 "-o", str(out)]) == 0
    head, rows = csv_rows(out.read_text())
    assert head == ["n", "gap", "normalized_gap", "deviation"] and len(rows) == 3
    assert (tmp_path / "o" / "c.svg").read_text().startswith("<svg")


def test_bounds_verbs(seqfile, capsys):
    assert main(["bounds", "check", "--seq", str(seqfile), "--n", "30", "--theta", "1"]) == 0
    head, rows = csv_rows(capsys.readouterr().out)
    assert head == ["n", "theta", "bound", "gap", "slack", "hs_norm", "sum_Tk2"]
    assert float(rows[0][4]) >= 0
    assert main(["bounds", "exponent", "--seq", str(seqfile), "--gamma", "1.5",
                 "--n-list", "10 20"]) == 0
    assert "horizon n=20" in capsys.readouterr().err
    assert main(["bounds", "exponent", "--seq", str(seqfile), "--gamma", "1",
                 "--n-list", "10"]) == EXIT_VALIDATION


def test_sparse_build(tmp_path):
    (tmp_path / "v.txt").write_text("# level values\n0.5\n0.4 0.0\n")
    assert main(["--out-dir", str(tmp_path), "sparse", "build", "--values",
                 str(tmp_path / "v.txt"), "--levels", "2", "-o", "s.txt",
                 "--cert", "certs"]) == EXIT_OK
    assert load_sequence(tmp_path / "s.txt").positions.tolist() == [10, 494]
    cert = json.loads((tmp_path / "certs" / "level1.json").read_text())
    assert cert["passed"] and cert["n_hat"] > 494


def test_sparse_build_cap_is_certification_failure(tmp_path, monkeypatch):
    monkeypatch.setattr(sparse, "SparseBuildConfig",
                        functools.partial(sparse.SparseBuildConfig, cap=50))
    (tmp_path / "v.txt").write_text("0.5\n")
    assert main(["sparse", "build", "--values", str(tmp_path / "v.txt"), "--levels", "1",
                 "-o", str(tmp_path / "s.txt")]) == EXIT_CERT
    assert not (tmp_path / "s.txt").exists()


def test_sparse_values_malformed(tmp_path):
    (tmp_path / "v.txt").write_text("half\n")
    assert main(["sparse", "build", "--values", str(tmp_path / "v.txt"), "--levels", "1",
                 "-o", str(tmp_path / "s.txt")]) == EXIT_VALIDATION


def test_run_and_rerun(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text('kind = "identity-suite"\nn = [5, 50]\n')
    assert main(["--out-dir", str(tmp_path / "a"), "run", str(cfg)]) == 0
    first = capsys.readouterr().out
    assert main(["--out-dir", str(tmp_path / "b"), "run", str(cfg), "--resume"]) == 0
    assert capsys.readouterr().out == first
    a = json.loads((tmp_path / "a" / "manifest.json").read_text())
    assert main(["--seed", "9", "--out-dir", str(tmp_path / "c"), "run", str(cfg)]) == 0
    c = json.loads((tmp_path / "c" / "manifest.json").read_text())
    assert a["config_hash"] != c["config_hash"]


def test_run_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"kind": "identity-suite", "n": [5], "extra": 1}))
    assert main(["run", str(cfg)]) == EXIT_VALIDATION
    assert "unknown" in capsys.readouterr().err


def test_run_help_lists_schemas(capsys):
    with pytest.raises(SystemExit):
        main(["run", "--help"])
    text = capsys.readouterr().out
    for kind, cols in SCHEMAS.items():
        assert f"{kind}" in text and ",".join(cols) in text


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["popuc"])
    assert info.value.code == 2


def test_console_script_entry(seqfile):
    out = subprocess.run([sys.executable, "-m", "opuclab.cli", "popuc", "zeros", "--seq",
                          str(seqfile), "--n", "4"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("index,theta")
