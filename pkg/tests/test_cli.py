import json
import subprocess
import sys

import pytest

from softarc.cli import run
from softarc.gac import is_gac
from softarc.instance import dumps, from_document, loads, parse_instance
from softarc.oracle import brute_equivalent


def report(*argv):
    status, out, err = run(list(argv))
    return status, (json.loads(out) if out else None), err


def test_gac_fig1a():
    status, rep, _ = report("gac", "fig1a")
    assert status == 0
    w = from_document(rep)
    assert is_gac(w) and brute_equivalent(parse_instance("fig1a"), w)
    assert rep["results"]["f_min"] == 0
    assert rep["counts"]["iterations"] <= rep["results"]["iteration_bound"]


def test_dac_then_fmin(tmp_path):
    status, text, _ = run(["dac", "fig5a", "--order", "2,1"])
    assert status == 0
    path = tmp_path / "dac.json"
    path.write_text(text)
    status, rep, _ = report("fmin", str(path))
    assert status == 0 and rep["results"]["f_min"] == 1


def test_equiv():
    status, rep, _ = report("equiv", "fig1a", "fig1b")
    assert status == 0 and rep["results"]["equivalent"] is True
    status, rep, _ = report("equiv", "fig1a", "fig5a")
    assert status == 1 and rep["results"]["equivalent"] is False


def test_check_exit_codes():
    assert report("check-gac", "fig5a")[0] == 0
    status, rep, _ = report("check-gac", "fig1a")
    assert status == 1
    assert rep["results"]["witness"] == {
        "condition": 2, "scope": ["1", "2"], "variable": "1", "value": "b"}
    assert report("check-dac", "fig5a", "--order", "2,1")[0] == 1
    assert report("irreducible", "fig5a", "--depth", "2")[0] == 1


def test_usage_errors(tmp_path):
    assert report("nonsense")[0] == 2
    assert report("gac")[0] == 2
    status, out, err = report("gac", "missing-file")
    assert status == 2 and out is None and "missing-file" in err
    bad = tmp_path / "bad.yaml"
    bad.write_text("structure: {kind: weighted}\nvariables:\n  - {name: x, domain: [a]}\n"
                   "constraints:\n  - scope: [x]\n  - scope: [x]\n")
    status, _, err = report("check", str(bad))
    assert status == 2 and "duplicate scope" in err
    assert report("dac", "fig5a", "--order", "1")[0] == 2
    assert report("verify-structure", "weighted", "--samples", "5")[0] == 2


def test_solve_tree_and_optimum():
    _, rep, _ = report("solve-tree", "fig5a", "--root", "2")
    assert rep["results"]["valuation"] == 1
    assert rep["results"]["assignment"] == {"1": "b", "2": "a"}
    _, rep, _ = report("optimum", "fig1a")
    assert rep["results"] == {"valuation": 0, "assignment": {"1": "a", "2": "b"}, "enumerated": 4}


def test_proj_ext_commands():
    _, rep, _ = report("proj", "fig1a", "--scope", "1,2", "--var", "1", "--value", "b")
    assert from_document(rep) == parse_instance("fig1b")
    _, rep, _ = report("ext", "fig5a", "--scope", "1,2", "--var", "1", "--value", "a")
    assert from_document(rep).unary[0] == [0, 0]


def test_closures_command():
    _, rep, _ = report("closures", "nonconfluent", "--budget", "4")
    res = rep["results"]
    assert res["complete"] and (res["min_f_min"], res["max_f_min"]) == (0, 1)
    assert len(res["closures"]) == 2


def test_verify_structure_command():
    status, rep, _ = report("verify-structure", "financial_life", "--param", "fmax=3",
                            "--param", "hmax=3")
    assert status == 1 and rep["results"]["failed"] == ["fairness"]
    assert rep["results"]["axioms"]["fairness"]["witness"] == ["(0,1)", "(3,0)"]
    status, rep, _ = report("verify-structure", "driving_penalty")
    assert status == 0 and rep["results"]["absorbing_count"] == 3
    assert all(w is None for w in rep["results"]["theorems"].values())
    status, rep, _ = report("verify-structure", "fig1a", "--samples", "100", "--seed", "2")
    assert status == 0 and rep["results"]["mode"] == "sampled(100,2)"


@pytest.mark.parametrize("argv", [
    ["gac", "fig2a"], ["sac-strict", "fig2a"], ["dac", "fig2a", "--order", "0,1,2,3"],
    ["closures", "fig1a"], ["check", "fig5a"],
])
def test_reports_round_trip_and_deterministic(argv):
    s1, out1, _ = run(argv)
    s2, out2, _ = run(argv)
    assert out1 == out2
    doc = json.loads(out1)
    v = from_document(doc)
    assert loads(dumps(v)) == v


def test_figure_written(tmp_path):
    target = tmp_path / "g.png"
    status, rep, _ = report("gac", "fig2a", "--figure", str(target))
    assert status == 0 and target.stat().st_size > 0
    assert rep["figure"] == str(target)
    again = tmp_path / "g2.png"
    run(["gac", "fig2a", "--figure", str(again)])
    assert target.read_bytes() == again.read_bytes()
    assert report("fmin", "fig1a", "--figure", str(tmp_path / "x.png"))[0] == 2


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "softarc.cli", "fmin", "fig5a"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["f_min"] == 0
