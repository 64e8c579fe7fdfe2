import json
import subprocess
import sys

import numpy as np
import pytest

from logmaj.cli import main
from logmaj.linalg import save_matrix


@pytest.fixture
def files(tmp_path):
    def write(name, a):
        path = tmp_path / name
        save_matrix(str(path), np.asarray(a, dtype=complex))
        return str(path)

    return write


def test_list(capsys):
    assert main(["list"]) == 0
    assert "reproduce_counterexamples" in capsys.readouterr().out


def test_verify_minkowski(files, capsys):
    a, b = files("a.json", np.diag([1, 4])), files("b.json", np.diag([4, 1]))
    assert main(["verify", "--name", "minkowski_det", "--a", a, "--b", b, "--json"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out[out.index("{"):])
    assert doc["lhs"] == pytest.approx(5) and doc["rhs_terms"] == pytest.approx([4]) and doc["satisfied"]


def test_verify_not_psd(files, capsys):
    a, b = files("a.json", np.diag([1, -1])), files("b.json", np.eye(2))
    assert main(["verify", "--name", "fiedler_chain", "--a", a, "--b", b]) == 2
    assert "NotPSD" in capsys.readouterr().err


def test_verify_identity_zero(files, capsys):
    z = files("z.json", np.zeros((3, 3)))
    assert main(["verify", "--name", "hua_identity_residual", "--a", z, "--b", z]) == 0
    assert "residual=0.000e+00" in capsys.readouterr().out


def test_verify_index_and_violation(files):
    a, b = files("a.json", np.diag([2, 1])), files("b.json", np.diag([3, 2]))
    assert main(["verify", "--name", "pairwise_bound", "--a", a, "--b", b, "--index", "1,2"]) == 0
    assert main(["verify", "--name", "minkowski_det", "--a", a, "--b", a, "--tol", "-1"]) == 2
    assert main(["verify", "--name", "main_bounds", "--a", a, "--b", b, "--index", "3"]) == 2


def test_verify_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "m": 2, "entries": [[[1, 0]]]}')
    assert main(["verify", "--name", "minkowski_det", "--a", str(bad), "--b", str(bad)]) == 2
    assert "ParseError" in capsys.readouterr().err


def test_verify_counterexamples(capsys):
    assert main(["verify", "--name", "reproduce_counterexamples"]) == 0
    assert "reproduced" in capsys.readouterr().out


def test_check_command(capsys):
    assert main(["check", "--name", "main_bounds", "--n", "3", "--trials", "5", "--seed", "4", "--real"]) == 0
    assert main(["check", "--name", "nope", "--n", "3", "--trials", "5", "--seed", "4"]) == 2
    assert main(["check", "--name", "main_bounds", "--n", "3", "--trials", "0", "--seed", "4"]) == 2


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["check", "--name", "main_bounds"])
    assert exc.value.code == 2


def test_campaign_command(tmp_path):
    cfg = tmp_path / "cfg.json"
    out = tmp_path / "report.json"
    cfg.write_text(json.dumps({"checks": ["minkowski_det", "tail_chain"], "dims": [2, 3], "trials": 4}))
    assert main(["campaign", "--config", str(cfg), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["totals"]["violations"] == 0 and "wall_time" in doc["execution"]
    cfg.write_text(json.dumps({"trials": 0}))
    assert main(["campaign", "--config", str(cfg)]) == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "logmaj.cli", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "main_bounds" in proc.stdout


def test_violation_exit_code(monkeypatch, files):
    from logmaj import harness
    from logmaj.bounds.reports import chain

    check = harness.REGISTRY["minkowski_det"]
    monkeypatch.setitem(harness.REGISTRY, "minkowski_det", harness.Check(
        check.name, check.anchor, check.kind, check.preconditions, check.index_family,
        lambda seed, n, st: [(None, chain("fake", [0.0, 1.0]))], lambda v: chain("fake", [0.0, 1.0])))
    a = files("a.json", np.eye(2))
    assert main(["verify", "--name", "minkowski_det", "--a", a, "--b", a]) == 1
    assert main(["check", "--name", "minkowski_det", "--n", "2", "--trials", "2", "--seed", "0"]) == 1
