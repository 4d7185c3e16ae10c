import json
import subprocess
import sys

import pytest

from etastar.cli import EXIT_BUDGET, EXIT_CONFIG, main
from etastar.projective import dump_config, generate_En


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_chambers_both(capsys):
    code, out = run(capsys, "chambers", "--input", "E2", "--method", "both")
    rec = json.loads(out.out)
    assert code == 0
    assert rec["values"] == {"zaslavsky": 14, "deletion_restriction": 14, "agree": True}
    assert {"quantity", "inputs", "mode", "seed", "values", "runtime_s"} <= rec.keys()


def test_eta_all(capsys):
    code, out = run(capsys, "eta", "--input", "E2", "--method", "all")
    vals = json.loads(out.out)["values"]
    assert code == 0 and (vals["order"], vals["homology"], vals["flags"]) == (3, 3, 3)


def test_eta_with_order_seed(capsys):
    code, out = run(capsys, "eta", "--input", "line3", "--method", "order", "--seed", "3")
    assert code == 0 and json.loads(out.out)["seed"] == 3


def test_input_file(capsys, tmp_path):
    path = tmp_path / "e2.txt"
    path.write_text("# cube\n" + dump_config(generate_En(2)))
    code, out = run(capsys, "chambers", "--input", str(path), "--method", "zaslavsky")
    assert code == 0 and json.loads(out.out)["values"]["zaslavsky"] == 14


def test_bad_input_exit_2(capsys):
    code, out = run(capsys, "chambers", "--input", "nowhere")
    assert code == EXIT_CONFIG and "neither a file" in out.err


def test_malformed_file_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("dim 2\n1 2\n")
    code, _ = run(capsys, "eta", "--input", str(path))
    assert code == EXIT_CONFIG


def test_missing_n_exit_2(capsys):
    code, _ = run(capsys, "singular")
    assert code == EXIT_CONFIG


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["chambers", "--input", "E2", "--format", "yaml"])
    assert exc.value.code == 2


def test_budget_exit_3(capsys):
    code, out = run(capsys, "singular", "--n", "8")
    assert code == EXIT_BUDGET and "budget" in out.err


def test_singular_mc_sample_floor(capsys):
    code, _ = run(capsys, "singular", "--n", "3", "--method", "mc", "--samples", "100")
    assert code == EXIT_CONFIG


def test_singular_mc(capsys):
    code, out = run(capsys, "singular", "--n", "2", "--method", "mc", "--samples", "20000",
                    "--seed", "5", "--deterministic")
    rec = json.loads(out.out)
    assert code == 0 and rec["values"]["ci95"][0] < 0.5 < rec["values"]["ci95"][1]
    assert "runtime_s" not in rec and "timestamp" not in rec


def test_csv_and_text(capsys):
    code, out = run(capsys, "delta", "--n", "3", "--format", "csv")
    lines = out.out.splitlines()
    assert lines[0] == "quantity,mode,seed,field,value"
    assert "delta,exhaustive,,4,6/35" in lines
    code, out = run(capsys, "gamma", "--n", "3", "--k", "3", "--format", "text")
    assert "epsilon: 6/35" in out.out


def test_threshold(capsys):
    code, out = run(capsys, "threshold", "--n", "3")
    vals = json.loads(out.out)["values"]
    assert code == 0 and vals["count"] == 104 and vals["schlafli_upper"] == 128


def test_cache_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ETASTAR_CACHE_DIR", str(tmp_path))
    first = run(capsys, "singular", "--n", "3", "--deterministic")[1].out
    assert (tmp_path / "stats.json").exists()
    second = run(capsys, "singular", "--n", "3", "--deterministic")[1].out
    assert first == second
    run(capsys, "chambers", "--input", "E2", "--method", "zaslavsky")
    assert list(tmp_path.glob("lattice-*.json"))


def test_verify_quick(capsys):
    code, out = run(capsys, "verify", "--level", "quick", "--seed", "7", "--deterministic")
    rec = json.loads(out.out)
    assert code == 0 and rec["values"]["status"] == "pass"
    assert rec["values"]["summary"]["fail"] == 0


def test_verify_only_module(capsys):
    code, out = run(capsys, "verify", "--only", "exact_linalg", "--deterministic")
    checks = json.loads(out.out)["values"]["checks"]
    assert code == 0 and {c["module"] for c in checks} == {"exact_linalg"}


def test_report(capsys):
    code, out = run(capsys, "report", "--n-max", "3", "--deterministic")
    vals = json.loads(out.out)["values"]
    assert code == 0 and vals["holds"]
    assert vals["bounds"]["2"] == {"two_eta": 6, "count": 14, "schlafli_upper": 14, "holds": True}
    assert vals["singular"]["2"]["P"] == "1/2"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "etastar", "eta", "--input", "E1",
                           "--deterministic", "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0 and "order: 1" in proc.stdout
