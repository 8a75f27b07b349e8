import json
import subprocess
import sys

import pytest

from hyperladder.cli import main


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "hyperladder", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_list_text_and_json(capsys):
    assert main(["list"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 9
    assert main(["list", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [r["name"] for r in rows][:2] == ["hermite", "laguerre"]
    assert rows[8]["params"] == ["alpha", "beta", "N"]


def test_unknown_flag_is_a_usage_error(capsys):
    assert main(["list", "--bogus"]) == 2
    assert "usage" in capsys.readouterr().err


def test_abbreviated_flags_are_refused(capsys):
    assert main(["table", "--fam", "hermite"]) == 2


def test_table_hermite_rows(capsys):
    assert main(["table", "--family", "hermite", "--n-max", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [r["coeffs"] for r in doc["rows"]] == [["1"], ["0", "2"], ["-2", "0", "4"]]
    assert [r["mu"] for r in doc["rows"]] == ["2", "4", "6"]
    assert doc["rows"][1]["nu"] == "2"


def test_table_hahn_is_exact(capsys):
    assert main(["table", "--family", "hahn", "--alpha", "1", "--beta", "2", "--N", "8", "--n-max", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["params"] == {"N": "8", "alpha": "1", "beta": "2"}
    for row in doc["rows"]:
        for c in row["coeffs"]:
            assert "." not in c


def test_table_csv(capsys):
    assert main(["table", "--family", "charlier", "--n-max", "1", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("n,k,coeff")
    assert len(lines) == 1 + 1 + 2


def test_table_degree_out_of_range(capsys):
    assert main(["table", "--family", "kravchuk", "--p", "1/2", "--N", "8", "--n-max", "9"]) == 2


def test_eval_values(capsys):
    assert main(["eval", "--family", "hermite", "--n", "0", "--points", "0"]) == 0
    assert capsys.readouterr().out.strip() == "0.7511255444649425"
    assert main(["eval", "--family", "legendre", "--n", "0", "--points", "0.5"]) == 0
    assert capsys.readouterr().out.strip() == "0.7071067811865476"
    assert main(["eval", "--family", "charlier", "--mu", "1/2", "--n", "1", "--points", "0,1,2",
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["values"]) == 3


def test_eval_off_support_names_the_point(capsys):
    assert main(["eval", "--family", "legendre", "--n", "1", "--points", "0,3/2"]) == 2
    assert "3/2" in capsys.readouterr().err
    assert main(["eval", "--family", "kravchuk", "--n", "1", "--points", "9"]) == 2
    assert "9" in capsys.readouterr().err


def test_parameter_errors(capsys):
    assert main(["verify", "--family", "meixner", "--gamma", "2", "--mu", "2"]) == 2
    assert main(["verify", "--family", "hermite", "--alpha", "1"]) == 2
    assert main(["verify", "--family", "hermite", "--suites", "ode,bogus"]) == 2
    assert main(["table", "--family", "laguerre", "--alpha", "x"]) == 2
    assert main(["table"]) == 2


def test_verify_hermite_all_suites(capsys):
    assert main(["verify", "--family", "hermite", "--n-max", "10", "--suites", "all"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["pass"] is True
    assert [s["name"] for s in doc["suites"]] == [
        "ode", "recurrence", "ladder", "orthonormality", "adjoint", "factorization", "fixtures"]
    for suite in doc["suites"]:
        for check in suite["checks"]:
            if check["mode"] == "exact":
                assert check["residual"] == "exact-zero"
            assert set(check) >= {"identity", "n", "mode", "residual", "tolerance", "pass"}


def test_verify_chebyshev_mu_row(capsys):
    assert main(["verify", "--family", "chebyshev", "--N", "8", "--suites", "factorization"]) == 0
    doc = json.loads(capsys.readouterr().out)
    rows = {c["n"]: c["value"] for c in doc["suites"][0]["checks"] if c["identity"] == "mu(n)"}
    assert rows[2] == "495/4"
    assert rows[7] == "0"


def test_verify_adjoint_normalized(capsys):
    args = ["verify", "--family", "hermite", "--n-max", "3", "--suites", "factorization"]
    assert main(args + ["--adjoint-normalized"]) == 0
    doc = json.loads(capsys.readouterr().out)
    rows = [c["value"] for c in doc["suites"][0]["checks"] if c["identity"] == "mu(n)"]
    # alpha_n gamma_{n+1} = (n+1)/2 for the physicists' normalization
    assert rows == ["1/2", "1", "3/2", "2"]


def test_verify_reports_undocumented_correction(capsys):
    assert main(["verify", "--family", "laguerre", "--suites", "fixtures"]) == 1
    doc = json.loads(capsys.readouterr().out)
    bad = [c for c in doc["suites"][0]["checks"] if not c["pass"]]
    assert {c["identity"] for c in bad} == {"La 3", "NLa product"}
    assert all(c["corrected"] and not c["documented"] for c in bad)


def test_verify_text_and_csv(capsys):
    assert main(["verify", "--family", "charlier", "--suites", "ode", "--format", "text"]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")
    assert main(["verify", "--family", "charlier", "--suites", "ode", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("family,suite,identity")
    assert len(lines) == 14


def test_tolerance_is_reported(capsys):
    assert main(["verify", "--family", "meixner", "--suites", "orthonormality", "--n-max", "3",
                 "--tolerance", "1e-12"]) == 0
    doc = json.loads(capsys.readouterr().out)
    numeric = [c for c in doc["suites"][0]["checks"] if c["mode"] == "numeric"]
    assert numeric and all(c["tolerance"] == 1e-12 for c in numeric)


@pytest.mark.parametrize("args, code", [
    (["list"], 0),
    (["eval", "--family", "hermite", "--n", "2", "--points", "1/2"], 0),
    (["verify", "--family", "kravchuk", "--suites", "ode"], 0),
    (["nope"], 2),
])
def test_console_entry(args, code):
    rc, out, err = run(*args)
    assert rc == code, err
