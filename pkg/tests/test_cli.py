import json
import subprocess
import sys

import pytest

from adlsets.cli import main
from adlsets.mu_sets import clear_memo

GL2 = '{"type": "GL", "rank": 2}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert doc["exit_code"] == code
    return code, doc, out


def test_nonempty_superbasic(capsys):
    code, doc, _ = run(capsys, "nonempty", "--datum", GL2, "--levi", "0", "--mu", "1,0", "--kappa", "1,0")
    assert code == 0 and doc["result"]["nonempty"] is True
    assert doc["result"]["pmuM_size"] == 1
    code, doc, _ = run(capsys, "nonempty", "--datum", GL2, "--levi", "0", "--mu", "1,0", "--kappa", "0,0")
    assert code == 0 and doc["result"]["nonempty"] is False


def test_datum_file(capsys, tmp_path):
    path = tmp_path / "gl2.json"
    path.write_text(GL2)
    code, doc, _ = run(capsys, "mazur", "--datum", str(path), "--levi", "", "--mu", "1,0", "--kappa", "2,-1")
    assert code == 0 and doc["result"]["mazur"] is False


def test_malformed_datum(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, doc, _ = run(capsys, "nonempty", "--datum", str(path), "--mu", "1,0", "--kappa", "1,0")
    assert code == 2 and "error" in doc
    code, doc, _ = run(capsys, "nonempty", "--datum", '{"type": "Q", "rank": 2}', "--mu", "1,0", "--kappa", "1,0")
    assert code == 2


def test_hn_hypothesis(capsys):
    code, doc, _ = run(capsys, "hn-hypothesis", "--datum", GL2, "--levi", "", "--mu", "1,0", "--kappa", "1,0")
    assert doc["result"]["bijection_predicted"] is True


def test_pmu(capsys):
    code, doc, _ = run(capsys, "pmu", "--datum", '{"type": "GL", "rank": 3}', "--mu", "2,0,0")
    assert doc["result"]["size"] == 6


def test_newton_point(capsys):
    _, doc, _ = run(capsys, "newton-point", "--datum", GL2, "--mu", "1,0", "--w", "0")
    assert doc["result"]["newton_point"] == ["1/2", "1/2"]
    _, doc, _ = run(capsys, "newton-point", "--datum", '{"type": "GL", "rank": 3}', "--mu", "1,0,0", "--w", "0,1")
    assert doc["result"]["newton_point"] == ["1/3", "1/3", "1/3"]


def test_converse_scan_codes(capsys):
    code, doc, _ = run(capsys, "converse-scan", "--datum", '{"type": "A", "rank": 3}', "--height", "6")
    assert code == 0 and doc["result"]["passed"]
    code, doc, _ = run(capsys, "converse-scan", "--datum", '{"type": "C", "rank": 2}', "--height", "6")
    assert code == 0
    clear_memo()
    code, doc, _ = run(capsys, "converse-scan", "--datum", '{"type": "D", "rank": 4}', "--height", "6",
                       "--budget", "1")
    assert code == 2 and doc["result"]["partial"]["complete"] is False


def test_oracle_suites(capsys):
    code, doc, _ = run(capsys, "oracle", "--suite", "retractions", "--n", "2", "--samples", "30", "--seed", "7")
    assert code == 0 and doc["result"]["passed"]
    assert "(r.3.1)" in doc["result"]["counts"]
    code, doc, _ = run(capsys, "oracle", "--suite", "nope")
    assert code == 2


def test_oracle_matrix(capsys):
    code, doc, _ = run(capsys, "oracle", "--suite", "matrix", "--matrix", '[["1", "t^-1"], ["0", "1"]]',
                       "--blocks", "1,1")
    r = doc["result"]
    assert r["retractions"]["0,1"] == [0, 0] and r["retractions"]["1,0"] == [1, -1]
    assert r["km_membership"] == {"by_retractions": False, "by_witness": False}


def test_deterministic(capsys):
    args = ["oracle", "--suite", "levi", "--n", "3", "--samples", "5", "--seed", "11"]
    _, _, a = run(capsys, *args)
    _, _, b = run(capsys, *args)
    assert a == b


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    _, _, text = run(capsys, "pmu", "--datum", GL2, "--mu", "1,0", "--out", str(out))
    assert out.read_text() == text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "adlsets", "oracle", "--suite", "nope"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["exit_code"] == 2


@pytest.mark.parametrize("argv", [["nonempty", "--datum", GL2, "--mu", "1,0"], ["bogus"]])
def test_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 2
