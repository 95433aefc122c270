import json
import subprocess
import sys
from pathlib import Path

import pytest

from conegauge.cli import main

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_subprocess(*argv):
    return subprocess.run(
        [sys.executable, "-m", "conegauge", *map(str, argv)], capture_output=True, check=False
    )


# -- classify ------------------------------------------------------------------


def test_classify_interior(capsys):
    code, out, _ = run(capsys, "classify", "--cone", DATA / "orthant2.json", "--point=-1,-1")
    assert code == 0
    assert json.loads(out)["label"] == "interior_of_minus_k"


def test_classify_exterior_with_gauge(capsys):
    code, out, _ = run(
        capsys, "classify", "--cone", DATA / "orthant2.json", "--point=1,-1", "--gauge", DATA / "orthant_gauge.json"
    )
    result = json.loads(out)
    assert code == 0
    assert result["label"] == result["sign_label"] == "exterior"
    assert result["phi_value"] == 1.0


def test_classify_disagreement_exit_3(tmp_path, capsys):
    gauge = tmp_path / "scaled.json"
    gauge.write_text(json.dumps({"cone": {"kind": "orthant", "dim": 2}, "dual_set": [[10, 0], [0, 10]]}))
    # dual score 5e-10 is inside the boundary band, phi = 5e-9 is not
    code, out, _ = run(capsys, "classify", "--cone", DATA / "orthant2.json", "--point=5e-10,-1", "--gauge", gauge)
    assert code == 3
    assert json.loads(out)["agree"] is False


def test_classify_malformed_json(capsys):
    code, out, err = run(capsys, "classify", "--cone", DATA / "malformed.json", "--point=1,1")
    assert code == 2 and out == "" and "error" in err


def test_classify_dim_mismatch(capsys):
    code, _, _ = run(capsys, "classify", "--cone", DATA / "orthant2.json", "--point=1,1,1")
    assert code == 2


def test_classify_negative_tol(capsys):
    code, _, _ = run(capsys, "classify", "--cone", DATA / "orthant2.json", "--point=1,1", "--tol=-1")
    assert code == 2


# -- distance, cone-check, gauge-eval ----------------------------------------------


def test_distance(capsys):
    code, out, _ = run(capsys, "distance", "--cone", DATA / "orthant2.json", "--point=3,4")
    result = json.loads(out)
    assert code == 0
    assert result["oriented_distance"] == pytest.approx(5.0)
    assert result["projection"] == [0.0, 0.0]


def test_cone_check_computes_dual(capsys):
    code, out, _ = run(capsys, "cone-check", "--cone", DATA / "wedge_nodual.json")
    result = json.loads(out)
    assert code == 0 and result["pointed"] and result["nonempty_interior"]
    assert len(result["dual_generators"]) == 2


def test_gauge_eval(capsys):
    code, out, _ = run(capsys, "gauge-eval", "--gauge", DATA / "wedge_gauge.json", "--point=1,1")
    assert code == 0
    assert json.loads(out) == {"point": [1.0, 1.0], "phi_value": 1.0, "index": 0}


# -- levelset ------------------------------------------------------------------------


def test_levelset_golden(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code, _, _ = run(capsys, "levelset", "--gauge", DATA / "orthant_gauge.json", "--grid=-1,1,-1,1,2", "--out", out)
    assert code == 0
    assert out.read_bytes() == (GOLDEN / "levelset_orthant.csv").read_bytes()
    rows = out.read_text().splitlines()[1:]
    assert len(rows) == 9
    assert "-1,-1,-1" in rows and "0,0,0" in rows and "1,1,1" in rows


def test_levelset_full_precision(capsys):
    code, out, _ = run(capsys, "levelset", "--gauge", DATA / "lorentz_oriented.json", "--grid=0,1,0,1,3")
    assert code == 2  # 3-D cone
    code, out, _ = run(capsys, "levelset", "--gauge", DATA / "orthant_oriented.json", "--grid=0,1,0,1,3")
    first = out.splitlines()[2]
    assert first == "0.33333333333333331,0,0.33333333333333331"


def test_levelset_errors_leave_no_file(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code, _, _ = run(capsys, "levelset", "--gauge", DATA / "orthant_gauge.json", "--grid=-1,1,-1,1,1", "--out", out)
    assert code == 2 and not out.exists()
    code, _, _ = run(capsys, "levelset", "--gauge", DATA / "lorentz_oriented.json", "--grid=-1,1,-1,1,4", "--out", out)
    assert code == 2 and not out.exists()
    assert list(tmp_path.iterdir()) == []


# -- descend ---------------------------------------------------------------------------


def test_descend_converges(tmp_path, capsys):
    out = tmp_path / "trace.json"
    code, stdout, _ = run(capsys, "descend", "--problem", DATA / "problem_biquad.json", "--out", out)
    trace = json.loads(out.read_text())
    assert code == 0
    assert stdout.startswith("iters=") and "term=converged" in stdout
    assert trace["theta"][-1] >= -1e-6
    assert -1e-6 <= trace["iterates"][-1][0] <= 1 + 1e-6


def test_descend_critical_start(tmp_path, capsys):
    out = tmp_path / "trace.json"
    code, stdout, _ = run(capsys, "descend", "--problem", DATA / "problem_critical.json", "--out", out)
    assert code == 0
    assert len(json.loads(out.read_text())["steps"]) <= 1
    assert stdout.strip() == "iters=0 theta=0 term=converged"


def test_descend_unknown_problem(capsys):
    code, _, err = run(capsys, "descend", "--problem", DATA / "problem_unknown.json")
    assert code == 2 and "unknown problem" in err


def test_descend_not_converged_exit_4(tmp_path, capsys):
    prob = tmp_path / "p.json"
    prob.write_text(json.dumps({"problem": "jos1", "x0": [5.0, -4.0], "cone": {"kind": "orthant", "dim": 2}, "config": {"max_iters": 0}}))
    code, _, _ = run(capsys, "descend", "--problem", prob, "--out", tmp_path / "t.json")
    assert code == 4


# -- verify -----------------------------------------------------------------------------


def test_verify_orthant(capsys):
    code, out, _ = run(capsys, "verify", "--gauge", DATA / "orthant_gauge.json", "--samples", 10000, "--seed", 42)
    report = json.loads(out)
    assert code == 0 and report["passed"] and report["seed"] == 42


def test_verify_rejects_bad_gauge(capsys):
    code, _, err = run(capsys, "verify", "--gauge", DATA / "bad_gauge.json")
    assert code == 2 and "not in K+" in err


def test_verify_zero_samples(capsys):
    code, _, _ = run(capsys, "verify", "--gauge", DATA / "orthant_gauge.json", "--samples", 0)
    assert code == 2


def test_unknown_subcommand_exit_2():
    assert run_subprocess("bogus").returncode == 2


# -- determinism --------------------------------------------------------------------------


def test_levelset_byte_identical_across_processes(tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"g{i}.csv"
        proc = run_subprocess("levelset", "--gauge", DATA / "orthant_gauge.json", "--grid=-1,1,-1,1,2", "--out", out)
        assert proc.returncode == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == (GOLDEN / "levelset_orthant.csv").read_bytes()


def test_classify_byte_identical_across_processes():
    runs = [run_subprocess("classify", "--cone", DATA / "orthant2.json", "--point=-1,-1").stdout for _ in range(2)]
    assert runs[0] == runs[1] == (GOLDEN / "classify_orthant.json").read_bytes()
