import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from biframe.cli import main

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_analyze_onb():
    code, out, _ = run("analyze", str(SCENARIOS / "onb_parseval.json"))
    assert code == 0 and "[PASS] onb.classify" in out


def test_analyze_example1_json_and_strict(tmp_path):
    path = str(SCENARIOS / "example1.json")
    code, out, _ = run("analyze", path, "--json")
    doc = json.loads(out)
    check = doc["checks"][0]
    assert code == 0 and check["verdict"] == "mismatch-with-paper-claim"
    assert check["computed"]["lower_bound_C"] == pytest.approx(-0.0504626, abs=1e-6)
    code, _, _ = run("--strict-paper", "analyze", path)
    assert code == 1
    report = tmp_path / "r.json"
    code, _, _ = run("analyze", path, "--report", str(report), "--timings")
    assert "elapsed_seconds" in json.loads(report.read_text())["checks"][0]


def test_analyze_malformed():
    code, out, err = run("analyze", str(SCENARIOS / "malformed.json"))
    assert code == 2 and out == ""
    assert "malformed.json:3:28" in err


def test_analyze_several_files_parallel():
    files = [str(SCENARIOS / n) for n in ("onb_parseval.json", "riesz_lab.json", "controlled_frames.json")]
    c1, o1, _ = run("analyze", *files, "--json")
    c2, o2, _ = run("--parallel", "analyze", *files, "--json")
    assert c1 == c2 == 0 and o1 == o2
    assert json.loads(o1)["summary"]["total"] == 16


def test_failing_scenario_exit_1(tmp_path):
    doc = json.loads((SCENARIOS / "onb_parseval.json").read_text())
    doc["checks"][0]["expect"] = {"is_parseval": False}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert run("analyze", str(path))[0] == 1


def test_tolerance_flags(tmp_path):
    doc = {
        "schema_version": 1,
        "space": {"dimension": 2},
        "measure": {"kind": "counting", "size": 2},
        "families": {"e": {"generator": "onb"}, "f": {"generator": "onb", "scale": 1.001}},
        "checks": [{"op": "classify_pair", "xi": "e", "phi": "f", "expect": {"is_parseval": True}}],
    }
    path = tmp_path / "near.json"
    path.write_text(json.dumps(doc))
    assert run("analyze", str(path))[0] == 1
    assert run("analyze", str(path), "--tolerance-parseval", "1e-2")[0] == 0
    assert run("--tolerance-positivity", "2", "analyze", str(path), "--tolerance-parseval", "1e-2")[0] == 1
    assert run("analyze", str(path), "--tolerance-parseval", "-1")[0] == 2
    assert run("analyze", str(path), "--tolerance-parseval", "abc")[0] == 2


def test_paper_examples_command():
    code, out, _ = run("paper-examples")
    assert code == 0
    assert "mismatch-with-paper-claim" in out
    assert run("paper-examples", "--strict-paper")[0] == 1


def test_properties_command(tmp_path):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    code, out, _ = run("properties", "--seed", "42", "--trials", "1", "--max-dim", "2", "--report", str(r1))
    assert code == 0 and "26 pass" in out
    run("properties", "--seed", "42", "--trials", "1", "--max-dim", "2", "--report", str(r2))
    assert r1.read_bytes() == r2.read_bytes()


@pytest.mark.parametrize("args", [("--trials", "0"), ("--max-dim", "1"), ("--trials", "x")])
def test_properties_usage_errors(args):
    assert run("properties", *args)[0] == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("nonsense")[0] == 2
    assert run("--help")[0] == 0


def test_unwritable_report():
    code, _, err = run("paper-examples", "--report", "/nonexistent/dir/r.json")
    assert code == 2 and "cannot write" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "biframe", "analyze", str(SCENARIOS / "positive_matrix.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "positive_matrix.positivity" in proc.stdout
