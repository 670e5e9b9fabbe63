import io
import json
import subprocess
import sys

import pytest

from f4transfer.cli import SAMPLE_INPUT, main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def tsv(text):
    lines = text.strip().splitlines()
    header = lines[0].split("\t")
    return [dict(zip(header, ln.split("\t"))) for ln in lines[1:]]


def test_verify_passes_and_is_deterministic():
    a = run("verify", "--seed", "42", "--iterations", "15")
    b = run("verify", "--seed", "42", "--iterations", "15")
    assert a[0] == 0
    assert a == b
    rows = tsv(a[1])
    assert all(r["status"] == "pass" for r in rows)
    assert {"octonion_composition", "unipotent_quartic", "plancherel"} <= {r["identity"]
                                                                            for r in rows}


def test_verify_seed_changes_instances():
    _, out1, _ = run("verify", "--seed", "1", "--iterations", "3", "--mutate", "quartic-sign",
                     "--only", "unipotent_quartic")
    _, out2, _ = run("verify", "--seed", "2", "--iterations", "3", "--mutate", "quartic-sign",
                     "--only", "unipotent_quartic")
    assert out1 != out2


def test_verify_zero_iterations_warns():
    code, out, err = run("verify", "--iterations", "0")
    assert code == 0 and "warning" in err
    assert all(r["iterations"] == "0" for r in tsv(out))


def test_verify_detects_mutation():
    code, out, _ = run("verify", "--iterations", "10", "--only", "freudenthal",
                       "--mutate", "quartic-sign")
    assert code == 1
    failed = {r["identity"] for r in tsv(out) if r["status"] == "FAIL"}
    assert "unipotent_quartic" in failed
    assert all(name.endswith("quartic") for name in failed)
    bad = next(r for r in tsv(out) if r["identity"] == "unipotent_quartic")
    assert json.loads(bad["counterexample"])


def test_verify_negative_iterations_is_usage_error():
    assert run("verify", "--iterations", "-1")[0] == 2


def test_transfer_sample_with_oracle():
    code, out, _ = run("transfer", "--with-oracle")
    assert code == 0
    rows = tsv(out)
    assert len(rows) == 6
    for r in rows:
        assert float(r["oracle_delta"]) < 1e-9
        assert r["certified"] == "true"


def test_transfer_golden_point(tmp_path):
    path = tmp_path / "phi.json"
    path.write_text(json.dumps({"p": 3, "terms": [{"coeff": [1, 0], "beta": "0",
                                                   "center": "3", "depth": 2}]}))
    code, out, _ = run("transfer", "--input", str(path), "1")
    assert code == 0
    row = tsv(out)[0]
    assert abs(float(row["re"]) + 18172 / 729) < 1e-12


def test_transfer_zero_function_and_zero_point(tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({"p": 5, "terms": [], "points": ["1", "0", "5/7"]}))
    code, out, _ = run("transfer", "--input", str(path))
    assert code == 0
    rows = tsv(out)
    assert rows[1]["certified"] == "a=0" and rows[1]["re"] == "error"
    for r in (rows[0], rows[2]):
        assert float(r["re"]) == 0 and float(r["im"]) == 0


def test_transfer_bad_inputs(tmp_path):
    assert run("transfer", "--input", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("transfer", "--input", str(bad))[0] == 2
    domain = tmp_path / "domain.json"
    domain.write_text(json.dumps({"p": 3, "terms": [{"coeff": [1, 0], "beta": "0",
                                                     "center": "0", "depth": 1}]}))
    code, _, err = run("transfer", "--input", str(domain), "1")
    assert code == 2 and "contains 0" in err
    assert run("transfer", "1/0")[0] == 2


def test_transfer_json_format():
    code, out, _ = run("transfer", "--format", "json", "1", "3")
    assert code == 0
    rows = json.loads(out)
    assert [r["a"] for r in rows] == ["1", "3"]


def test_count_formula_only():
    code, out, _ = run("count", "--q", "3", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["enumeration"].startswith("refused")
    code, out, _ = run("count", "--q", "4", "--format", "json")
    assert json.loads(out)["order_ratio"] == 4 ** 8 * (4 ** 8 + 4 ** 4 + 1)
    assert run("count", "--q", "6")[0] == 2


@pytest.mark.slow
def test_count_gf2():
    code, out, _ = run("count", "--q", "2", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["rank1_trace1"] == 69888 and rep["ratio_match"] is True
    assert rep["vol_X"] == "273/256"


def test_unramified_report_and_exit_code():
    code, out, _ = run("unramified", "--spot-check", "q=9 t=1/2", "--spherical", "n=20 q=3")
    rep = json.loads(out)
    assert code == (0 if rep["identity_holds"] else 1)
    assert rep["spherical"]["recursion_holds"] is True
    assert set(rep["spot_check"]) == {"m0_cell_1", "uniform"}
    assert "discrepancy_ratio" in rep


def test_unramified_bad_spot_check():
    assert run("unramified", "--spot-check", "q=9 t")[0] == 2


def test_spherical_table():
    code, out, _ = run("spherical", "--q", "2", "--n", "3")
    assert code == 0
    assert [r["value"] for r in tsv(out)] == ["1", "9", "73", "585"]
    assert run("spherical", "--q", "1")[0] == 2


def test_unknown_command_is_usage_error():
    assert run("frobnicate")[0] == 2
    assert run()[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "f4transfer", "spherical", "--n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "1\t28\tok" in proc.stdout
    assert SAMPLE_INPUT.exists()
