import json
import subprocess
import sys

import pytest

from generic_tor.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_identity_and_sample(capsys):
    code, out, _ = run(["check", "planes-P3", "--g", "identity"], capsys)
    rep = json.loads(out)
    assert code == 1 and rep["result"]["verdict"] is False
    assert rep["result"]["tor"][1]["k_polynomial"] == "t - t^2"
    code, out, _ = run(["check", "planes-P3", "--g", "sample:0", "--seed", "42"], capsys)
    assert code == 0 and json.loads(out)["seed"] == 42


def test_check_free_E(capsys):
    assert run(["check", "free-E", "--g", "identity"], capsys)[0] == 0
    assert run(["check", "free-E"], capsys)[0] == 0


def test_check_matrix_literal_and_crosscheck(capsys):
    code, out, _ = run(["check", "planes-P3", "--crosscheck", "--g", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[1,0,0,1]]"],
                       capsys)
    assert code == 0 and json.loads(out)["result"]["crosscheck_agrees"] is True


def test_density(capsys, tmp_path):
    csv = tmp_path / "d.csv"
    code, out, _ = run(["density", "planes-P3", "--trials", "10", "--csv", str(csv)], capsys)
    rep = json.loads(out)["result"]
    assert code == 0 and rep["density"] == 1.0 and rep["failing"] == []
    assert csv.read_text().splitlines()[1].startswith("planes-P3,F_32003,42,10,10,1.0,0")
    code, out, _ = run(["density", "planes-P3", "--trials", "4", "--g", "identity"], capsys)
    assert code == 1 and json.loads(out)["result"]["density"] == 0.0
    assert run(["density", "planes-P3", "--trials", "0"], capsys)[0] == 2


def test_badlocus(capsys, tmp_path):
    out_file = tmp_path / "b.json"
    code, out, _ = run(["badlocus", "plane-family-1param", "--out", str(out_file)], capsys)
    assert code == 0 and out.strip() == "bad locus: (t)"
    assert json.loads(out_file.read_text())["result"]["ideal"] == ["t"]
    scen = json.loads((tmp_path / "b.json").read_text())
    assert scen["command"] == "badlocus"
    doc = {
        "name": "free-family", "ring": {"vars": ["x0", "x1", "x2", "x3"]},
        "group": {"type": "parametric", "params": ["t"],
                  "matrix": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["t", "0", "0", "1"]]},
        "E": {"free": 1}, "F": {"ideal": ["x3"]},
    }
    p = tmp_path / "free.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(["badlocus", str(p)], capsys)
    assert code == 0 and json.loads(out)["result"]["empty_locus"] is True
    doc["group"] = {"type": "parametric", "params": ["a", "b", "c", "d"],
                    "matrix": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["d", "0", "1", "0"], ["a", "b", "c", "1"]]}
    p.write_text(json.dumps(doc))
    code, _, err = run(["badlocus", str(p)], capsys)
    assert code == 2 and "parameters = 4 > 3" in err


def test_kprod(capsys):
    code, out, _ = run(["kprod", "planes-P3"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["result"]["invariant"]
    assert {c["t_polynomial"] for c in rep["result"]["classes"]} == {"1 - 2*t + t^2"}
    code, out, _ = run(["kprod", "lines-P3"], capsys)
    assert code == 0 and all(c["basis_coords"] == [0, 0, 0, 0] for c in json.loads(out)["result"]["classes"])
    code, out, _ = run(["kprod", "free-E"], capsys)
    rep = json.loads(out)["result"]
    assert code == 0 and rep["invariant"]
    assert rep["classes"][0]["basis_coords"] == [0, 1, 0, 0]


def test_usage_errors(capsys):
    assert run([], capsys)[0] == 2
    assert run(["check", "no-such-scenario"], capsys)[0] == 2
    assert run(["check", "planes-P3", "--g", "[[1]]"], capsys)[0] == 2
    assert run(["check", "planes-P3", "--prime", "10"], capsys)[0] == 2


def test_list(capsys):
    code, out, _ = run(["list"], capsys)
    assert code == 0 and "planes-P3" in out.split()


@pytest.mark.parametrize("argv", [
    ["check", "planes-P3", "--g", "sample:2"],
    ["density", "planes-P3", "--trials", "5"],
    ["badlocus", "lines-family-1param"],
    ["kprod", "twisted-cubic-vs-plane", "--samples", "2"],
])
def test_reports_are_byte_identical(argv, capsys):
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b and "seconds" not in a


def test_timings_opt_in(capsys):
    _, out, _ = run(["density", "planes-P3", "--trials", "2", "--timings"], capsys)
    assert "seconds" in json.loads(out)["result"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "generic_tor", "check", "planes-P3", "--g", "identity"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and json.loads(proc.stdout)["result"]["verdict"] is False
