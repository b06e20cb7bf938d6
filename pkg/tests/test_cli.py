import json
import subprocess
import sys

import pytest

from crushcount.cli import main
from crushcount.grid import candy_grid, serialize_hypergraph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exact(capsys):
    code, out, _ = run(capsys, "exact", "--rows", "2", "--cols", "3", "--colors", "2")
    assert code == 0 and json.loads(out)["stableCount"] == "36"


def test_exact_budget_exit(capsys):
    code, _, err = run(capsys, "exact", "--rows", "9", "--cols", "9", "--colors", "6")
    assert code == 4 and "budget" in err


def test_invalid_configuration(capsys):
    assert run(capsys, "exact", "--rows", "0", "--cols", "3", "--colors", "2")[0] == 2
    assert run(capsys, "exact", "--rows", "3", "--colors", "2")[0] == 2
    assert run(capsys, "estimate", "--rows", "3", "--cols", "3", "--colors", "2",
               "--epsilon", "-1")[0] == 2
    assert run(capsys, "mc", "--hypergraph", "/nonexistent", "--colors", "2")[0] == 2


def test_sampler_budget_exit(capsys):
    code, _, err = run(capsys, "estimate", "--rows", "6", "--cols", "6", "--colors", "2",
                       "--samples-per-level", "100", "--budget", "1")
    assert code == 3 and "warning" in err


def test_strict_refuses_infeasible(capsys):
    code, out, err = run(capsys, "estimate", "--rows", "3", "--cols", "3", "--colors", "6",
                         "--strict", "--samples-per-level", "10")
    assert code == 2 and out == "" and "local-lemma" in err


def test_estimate_trivial_grid(capsys):
    code, out, _ = run(capsys, "estimate", "--rows", "1", "--cols", "1", "--colors", "5")
    d = json.loads(out)
    assert code == 0 and d["ellMantissaExp"] == [1.0, 0]
    assert d["countMantissaExp"][1] == 0 and d["countMantissaExp"][0] == pytest.approx(5)


def test_estimate_deterministic(capsys, monkeypatch):
    args = ["estimate", "--rows", "4", "--cols", "4", "--colors", "7", "--samples-per-level", "500"]
    monkeypatch.setenv("CRUSH_COUNT_SEED", "12")
    a = json.loads(run(capsys, *args)[1])
    b = json.loads(run(capsys, *args, "--workers", "3")[1])
    c = json.loads(run(capsys, *args, "--seed", "12")[1])
    d = json.loads(run(capsys, *args, "--seed", "13")[1])
    for x in (a, b, c, d):
        x.pop("runtime")
    assert a == b == c
    assert a["params"]["masterSeed"] == 12 and d != a


def test_bad_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("CRUSH_COUNT_SEED", "abc")
    assert run(capsys, "mc", "--rows", "2", "--cols", "2", "--colors", "2")[0] == 2


def test_estimate_csv_and_output_file(capsys, tmp_path):
    path = tmp_path / "levels.csv"
    code, out, _ = run(capsys, "estimate", "--rows", "2", "--cols", "3", "--colors", "3",
                       "--samples-per-level", "100", "--format", "csv", "-o", str(path))
    assert code == 0 and out == ""
    assert path.read_text().splitlines()[0].startswith("t,cHat")


def test_hypergraph_file(capsys, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text(serialize_hypergraph(candy_grid(3, 3)))
    code, out, _ = run(capsys, "exact", "--hypergraph", str(path), "--colors", "2")
    assert code == 0 and json.loads(out)["stableCount"] == "102"
    code, out, _ = run(capsys, "mc", "--hypergraph", str(path), "--colors", "2",
                       "--samples", "1000")
    assert code == 0 and json.loads(out)["params"]["hypergraphDigest"]
    assert run(capsys, "exact", "--hypergraph", str(path), "--rows", "3", "--colors", "2")[0] == 2
    assert run(capsys, "exact", "--hypergraph", str(path), "--k", "4", "--colors", "2")[0] == 2


def test_region_csv(capsys):
    code, out, _ = run(capsys, "region", "--k", "2:8", "--colors", "2:16")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "c,k=2,k=3,k=4,k=5,k=6,k=7,k=8" and len(lines) == 16
    code, out, _ = run(capsys, "region", "--k", "3", "--colors", "6:7", "--format", "json")
    assert json.loads(out)["grid"] == [[0], [1]]


def test_uniformity(capsys):
    code, out, _ = run(capsys, "uniformity", "--rows", "1", "--cols", "3", "--colors", "2",
                       "--seed", "1")
    d = json.loads(out)
    assert code == 0 and d["df"] == 5 and d["samples"] == 300 and d["pValue"] > 0.01


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "crushcount", "exact", "--rows", "1", "--cols", "3",
                        "--colors", "3"], capture_output=True, text=True, check=True)
    assert json.loads(r.stdout)["stableCount"] == "24"
