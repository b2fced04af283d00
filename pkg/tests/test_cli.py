import json
import subprocess
import sys

import pytest

from koornwinder.cli import EXIT_BAD_INPUT, EXIT_COLLISION, EXIT_FAIL, EXIT_PASS, main, run
from koornwinder.params import ModelParams, eigenvalue_a

P2 = ["--n", "2", "--qh", "1/3", "--th", "1/2", "--k0", "1/2", "--k1", "2/3", "--k0p", "1/5", "--k1p", "3/7"]


def test_polys_output_shape():
    doc, code, _ = run(["polys", *P2, "--lambda", "1,1"])
    assert code == EXIT_PASS
    (poly,) = doc["polys"]
    assert poly["lambda"] == [1, 1] and len(poly["eigenvalues"]) == 2
    assert {tuple(c["mu"]) for c in poly["coeffs"]} <= {(0, 0), (1, 0), (1, 1)}
    assert all("/" in c["coeff"] for c in poly["coeffs"])


def test_ideal_and_lambda_lists():
    doc, _, _ = run(["polys", *P2, "--lambda", "2,0", "--ideal"])
    assert [p["lambda"] for p in doc["polys"]] == [[0, 0], [1, 0], [1, 1], [2, 0]]
    doc, _, _ = run(["polys", *P2, "--lambda", "2,1;1,0"])
    assert [p["lambda"] for p in doc["polys"]] == [[2, 1], [1, 0]]


def test_roundtrip_polys_to_check(tmp_path):
    out = tmp_path / "polys.json"
    assert main(["polys", *P2, "--max-weight", "2", "--out", str(out)]) == EXIT_PASS
    doc, code, _ = run(["check", "eigen", "--input", str(out)])
    assert code == EXIT_PASS and doc["pass"]
    data = json.loads(out.read_text())
    data["polys"][-1]["coeffs"][0]["coeff"] = "1/7"
    out.write_text(json.dumps(data))
    doc, code, _ = run(["check", "eigen", "--input", str(out)])
    assert code == EXIT_FAIL and "residual" in doc["first_failure"]


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        main(["polys", *P2, "--max-weight", "2", "--out", str(path)])
    assert a.read_bytes() == b.read_bytes()


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 2, "qh": "1/3", "th": "1/2", "lambda": [[1, 0]]}))
    doc, _, _ = run(["polys", "--config", str(cfg)])
    assert doc["params"]["th"] == "1/2" and doc["polys"][0]["lambda"] == [1, 0]
    doc, _, _ = run(["polys", "--config", str(cfg), "--th", "2/3"])
    assert doc["params"]["th"] == "2/3"


@pytest.mark.parametrize("suite", ["triangular", "eigen", "commute", "identity", "tilde"])
def test_exact_suites_pass(suite):
    doc, code, _ = run(["check", suite, *P2, "--max-weight", "2"])
    assert code == EXIT_PASS, doc
    assert doc["suite"] == suite and doc["records"]


@pytest.mark.parametrize("suite", ["selfadjoint", "ortho"])
def test_numeric_suites_pass(suite):
    doc, code, _ = run(["check", suite, *P2, "--lambda", "1,1", "--ideal", "--grid", "32"])
    assert code == EXIT_PASS, doc


def test_limit_suite():
    args = ["check", "limit", "--additive", "--n", "2", "--g", "0.7", "--g0", "0.3", "--g1", "0.4",
            "--g0p", "0.2", "--g1p", "0.5", "--lambda", "1,1;2,1;2,2;3,1"]
    doc, code, _ = run(args)
    assert code == EXIT_PASS, doc
    assert [rep["constant"] for rep in doc["reports"]] == pytest.approx([0.5, 0.25])
    doc, code, _ = run(["check", "limit", *P2])
    assert code == EXIT_BAD_INPUT


def test_spectrum_table():
    doc, code, _ = run(["spectrum", "--n", "2", "--qh", "1/2", "--th", "1/3", "--max-weight", "2"])
    assert code == EXIT_PASS
    rows = {tuple(r["lambda"]): r["eigenvalues"] for r in doc["table"]["bc"]}
    assert rows[(0, 0)] == ["0/1", "0/1"]
    p = ModelParams(2, "1/2", "1/3")
    for row in doc["table"]["a"]:
        lam = tuple(row["lambda"])
        assert row["eigenvalues"][1] == f"{(p.q ** sum(lam)).numerator}/{(p.q ** sum(lam)).denominator}"
        assert row["eigenvalues"][0] == str(eigenvalue_a(p, 1, lam).numerator) + "/" + str(eigenvalue_a(p, 1, lam).denominator)


def test_spectrum_accepts_additive():
    doc, code, _ = run(["spectrum", "--additive", "--n", "1", "--g0", "0.5", "--beta", "0.2"])
    assert code == EXIT_PASS
    assert isinstance(doc["table"]["bc"][1]["eigenvalues"][0], float)


def test_collision_exit_code():
    doc, code, _ = run(["polys", "--flavor", "a", "--n", "2", "--qh", "1/2", "--th", "2/1", "--lambda", "2,0"])
    assert code == EXIT_COLLISION
    assert doc["lambda"] == [2, 0] and doc["mu"] == [1, 1]


@pytest.mark.parametrize(
    "argv",
    [
        ["polys", "--n", "2"],  # no qh
        ["polys", "--n", "2", "--qh", "3/2"],
        ["polys", "--n", "2", "--qh", "1/3", "--lambda", "1,2"],
        ["polys", "--n", "2", "--qh", "1/3", "--lambda", "1"],
        ["polys", "--additive", "--n", "2"],
        ["check", "eigen", "--input", "/nonexistent.json"],
        ["polys", "--config", "/nonexistent.json"],
    ],
)
def test_bad_input_exit_code(argv):
    _, code, _ = run(argv)
    assert code == EXIT_BAD_INPUT


def test_argparse_errors_use_bad_input_code():
    proc = subprocess.run([sys.executable, "-m", "koornwinder.cli", "check", "nosuchsuite"], capture_output=True)
    assert proc.returncode == EXIT_BAD_INPUT


def test_console_entry_writes_json():
    proc = subprocess.run(
        [sys.executable, "-m", "koornwinder.cli", "spectrum", "--n", "1", "--qh", "1/2"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["command"] == "spectrum"
