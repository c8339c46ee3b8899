import json
import subprocess
import sys

import pytest

from ultracoalg import ConfigInvalid
from ultracoalg.cli import main
from ultracoalg.suites import RunConfig, parse_inject


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_timing(doc):
    for r in doc["records"]:
        r.pop("timing_s", None)
    return doc


def test_coalg_suite_report(capsys):
    code, out, _ = run_cli(capsys, "run", "--suite", "coalg", "--rank", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["config"]["rank"] == 6
    s = doc["summary"]
    assert s["not_ok"] == 0 and s["ok"] == s["records"] > 0
    ids = [r["id"] for r in doc["records"]]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)
    assert all({"id", "anchor", "status", "residuals", "failures"} <= r.keys() for r in doc["records"])


def test_output_is_deterministic(capsys):
    _, a, _ = run_cli(capsys, "run", "--suite", "coalg,limits", "--rank", "4", "--window", "2")
    _, b, _ = run_cli(capsys, "run", "--suite", "coalg,limits", "--rank", "4", "--window", "2")
    assert strip_timing(json.loads(a)) == strip_timing(json.loads(b))


def test_injected_defect_is_reported_not_counted(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run_cli(capsys, "run", "--suite", "adm", "--rank", "4", "--window", "3",
                         "--inject", "enlarge-level:1", "--out", str(path))
    doc = json.loads(path.read_text())
    assert code == 0
    s = doc["summary"]
    assert s["injected"] >= 1 and s["injected_failed"] == s["injected"]
    bad = [r for r in doc["records"] if r["injected"]]
    assert all(r["status"] == "fail" and r["failures"] for r in bad)


def test_corrupt_comult_injection(capsys):
    code, out, _ = run_cli(capsys, "run", "--suite", "coalg", "--rank", "4", "--inject", "corrupt-comult")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["injected_failed"] >= 1


@pytest.mark.parametrize("argv", [
    ["run", "--suite", ""],
    ["run", "--suite", "bogus"],
    ["run", "--tol", "40"],
    ["run", "--prime", "6"],
    ["run", "--inject", "enlarge-level:9"],
    ["run", "--inject", "explode"],
    [],
])
def test_config_errors_exit_2(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2 and out == ""


def test_config_validation():
    assert RunConfig().validate().prime == 5
    with pytest.raises(ConfigInvalid):
        RunConfig(rank=1).validate()
    assert parse_inject("corrupt-level:2", 4) == ("corrupt-level", 2)
    with pytest.raises(ConfigInvalid):
        parse_inject("corrupt-comult:1", 4)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ultracoalg", "run", "--suite", "comod", "--rank", "4"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["summary"]["not_ok"] == 0
