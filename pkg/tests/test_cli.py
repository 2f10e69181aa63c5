import json
import os
import subprocess
import sys

import pytest

from eigenbound.cli import main
from eigenbound.scenario import shipped_scenarios_dir


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_box(capsys):
    code, out, _ = _run(capsys, "spectrum", "box", "--lengths", "1", "1", "--count", "3")
    d = json.loads(out)
    assert code == 0 and d["operator"] == "laplacian" and d["dim_n"] == 2
    assert len(d["values"]) >= 3


def test_spectrum_fd_plate(capsys):
    code, out, _ = _run(
        capsys, "spectrum", "box", "--lengths", "1", "1", "--operator", "bilaplacian", "--source", "fd", "--count", "2"
    )
    assert code == 0 and json.loads(out)["operator"] == "bilaplacian"


def test_curvature_cap(capsys):
    code, out, _ = _run(capsys, "curvature", "cap", "--n", "3", "--angle", "1.5707963267948966")
    d = json.loads(out)
    assert code == 0 and d["h_sup"] == 1.0


def test_gen_mesh_and_fem(tmp_path, capsys):
    p = str(tmp_path / "h.obj")
    code, out, _ = _run(capsys, "gen-mesh", "hemisphere", "--subdiv", "3", "-o", p)
    assert code == 0 and os.path.exists(p) and json.loads(out)["cells"] > 0
    code, out, _ = _run(capsys, "spectrum", "mesh", "--path", p, "--source", "fem", "--count", "2")
    assert code == 0 and json.loads(out)["values"][0] == pytest.approx(2.0, rel=0.05)
    code, out, _ = _run(capsys, "curvature", "mesh", "--path", p)
    assert code == 0 and json.loads(out)["h_sup"] == pytest.approx(1.0, rel=0.05)


def test_bound_holds_and_violation(tmp_path, capsys):
    good = tmp_path / "good.json"
    _, out, _ = _run(capsys, "spectrum", "box", "--lengths", "1", "1", "1", "--count", "6")
    good.write_text(out)
    code, out, _ = _run(capsys, "bound", "yang1", "--spectrum", str(good), "--k", "3")
    assert code == 0 and json.loads(out)["holds"] is True
    code, out, _ = _run(
        capsys, "bound", "thm_dirichlet_sobolev", "--spectrum", str(good), "--k", "3",
        "--h-sup", "0", "--volume", "1", "--c1", "talenti",
    )
    assert code == 0 and json.loads(out)["holds"] is True
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"operator": "laplacian", "dim_n": 2, "values": [1.0, 100.0, 101.0]}))
    code, out, _ = _run(capsys, "bound", "yang1", "--spectrum", str(bad), "--k", "1")
    assert code == 2 and json.loads(out)["holds"] is False


def test_library_errors_exit_1(tmp_path, capsys):
    bad = tmp_path / "desc.json"
    bad.write_text(json.dumps({"operator": "laplacian", "dim_n": 2, "values": [3.0, 1.0]}))
    code, _, err = _run(capsys, "bound", "yang1", "--spectrum", str(bad), "--k", "1")
    assert code == 1 and json.loads(err)["error"] == "unsorted_values"
    code, _, err = _run(capsys, "bound", "yang1", "--spectrum", str(tmp_path / "missing.json"), "--k", "1")
    assert code == 1


def test_usage_errors_exit_64(capsys):
    for argv in (["nope"], ["spectrum"], ["bound", "no_such_id", "--spectrum", "x", "--k", "1"], ["spectrum", "box"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 64
    capsys.readouterr()


def test_suite(tmp_path, capsys):
    code, out, _ = _run(capsys, "suite", "--output-dir", str(tmp_path))
    assert code == 0 and "cube_yang: ok" in out
    assert (tmp_path / "cube_yang.csv").exists()
    code, out, _ = _run(capsys, "suite", os.path.join(shipped_scenarios_dir(), "corrupted"), "--output-dir", str(tmp_path))
    assert code == 1 and "gate_violation" in out


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "eigenbound", "spectrum", "ball", "--n", "3", "--count", "1"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert json.loads(r.stdout)["values"][0] == pytest.approx(9.869604401089358, rel=1e-12)
