import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from coha_workbench.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"


def call(*argv, tmp_path=None):
    out = io.StringIO()
    args = list(argv)
    report = None
    if tmp_path is not None:
        path = tmp_path / "report.json"
        args += ["--out", str(path)]
    code = run(args, stdout=out)
    if tmp_path is not None:
        report = json.loads(path.read_text())
    return code, out.getvalue(), report


def data(name):
    return str(DATA / name)


def test_quiver_triple_psi(tmp_path):
    code, text, rep = call("quiver", "--quiver", data("jordan.json"), "--triple", "--psi", tmp_path=tmp_path)
    assert code == 0
    assert rep["exit_code"] == 0
    quiver_data = rep["reports"][0]["data"]
    assert quiver_data["psi"] == [[0]]


def test_quiver_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("quiver", "--quiver", str(bad))[0] == 2
    assert call("quiver", "--quiver", str(tmp_path / "missing.json"))[0] == 2


def test_quiver_doctored_psi(tmp_path):
    form = tmp_path / "psi.json"
    form.write_text("[[0, 0], [0, 0]]")
    code, text, rep = call("quiver", "--quiver", data("a2.json"), "--psi", str(form), tmp_path=tmp_path)
    assert code == 1
    assert "FAIL" in text
    failed = [r for r in rep["reports"][0]["checks"] if r["status"] == "fail"]
    assert failed and failed[0]["witness"]


@pytest.mark.parametrize("argv", [
    ["check", "current", "--presentation", "a2_presentation.json", "--r", "1,1", "--upow", "3"],
    ["check", "dimred", "--quiver", "a2.json"],
    ["check", "pbw", "--presentation", "a2_presentation.json", "--cutoff", "2,2", "--band", "8"],
    ["check", "serre", "--presentation", "a3_presentation.json"],
    ["check", "dimred", "--quiver", "d4.json", "--potential", "d4_deformed_potential.json"],
    ["count", "integrality", "--quiver", "jordan.json", "--dmax", "3", "--q", "2,3"],
    ["count", "dn", "--n", "4", "--samples", "25", "--seed", "7"],
    ["count", "kac", "--quiver", "kronecker.json", "--dim", "1,1", "--q", "2,3"],
    ["count", "nilpotent", "--quiver", "jordan.json", "--dim", "2", "--q", "2"],
])
def test_example_commands_succeed(argv):
    argv = [data(a) if a.endswith(".json") else a for a in argv]
    code, text, _ = call(*argv)
    assert code == 0, text


def test_count_preproj_row(tmp_path):
    code, text, rep = call("count", "preproj", "--quiver", data("jordan.json"), "--dim", "2", "--q", "2",
                           tmp_path=tmp_path)
    assert code == 0
    assert '"raw":88' in text.replace(" ", "")
    row, = rep["reports"][0]["data"]["rows"]
    assert row["raw"] == 88 and row["stack"] == "44/3"


def test_builtin_quiver_names():
    assert call("count", "preproj", "--quiver", "a2", "--dim", "1,1", "--q", "3")[0] == 0


def test_input_errors():
    assert call("count", "preproj", "--quiver", "jordan", "--dim", "1", "--q", "4")[0] == 2
    assert call("count", "preproj", "--quiver", "a2", "--dim", "1,1,1", "--q", "2")[0] == 2
    assert call("count", "dn", "--n", "4", "--samples", "25")[0] == 2
    assert call("check", "serre", "--presentation", data("a2_presentation.json"), "--cutoff", "1,1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        call("check", "dimred", "--cutoff", "-1")
    assert exc.value.code == 2


def test_strict_and_lenient_cutoff():
    args = ["check", "serre", "--quiver", "kronecker", "--cutoff", "2,2"]
    assert call(*args)[0] == 2
    assert call(*args, "--lenient")[0] == 0


def test_budget_exit_code(tmp_path):
    code, _, rep = call("count", "preproj", "--quiver", "jordan", "--dim", "5", "--q", "3", tmp_path=tmp_path)
    assert code == 3
    assert rep["error"]["type"] == "BudgetExceeded"


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("COHA_WORKBENCH_BUDGET", "10")
    assert call("count", "preproj", "--quiver", "jordan", "--dim", "2", "--q", "2")[0] == 3


def _strip(rep):
    rep = dict(rep)
    rep.pop("timing")
    cfg = dict(rep["config"])
    cfg.pop("out", None)
    cfg.pop("jobs", None)
    rep["config"] = cfg
    return json.dumps(rep, sort_keys=True)


def test_reports_reproducible_and_jobs_invariant(tmp_path):
    argv = ["count", "preproj", "--quiver", "jordan", "--dim", "3", "--q", "2"]
    a = call(*argv, tmp_path=tmp_path)[2]
    b = call(*argv, tmp_path=tmp_path)[2]
    c = call(*argv, "--jobs", "3", tmp_path=tmp_path)[2]
    assert _strip(a) == _strip(b) == _strip(c)
    d1 = call("count", "dn", "--seed", "5", "--samples", "10", tmp_path=tmp_path)[2]
    d2 = call("count", "dn", "--seed", "5", "--samples", "10", tmp_path=tmp_path)[2]
    assert _strip(d1) == _strip(d2)


def test_report_schema(tmp_path):
    rep = call("check", "dimred", "--quiver", "jordan", tmp_path=tmp_path)[2]
    assert set(rep) == {"schema_version", "tool_version", "config", "exit_code", "reports", "timing"}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coha_workbench.cli", "count", "preproj", "--quiver", "a2",
                           "--dim", "1,1", "--q", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "raw" in proc.stdout
