import csv
import io
import json
import os

import pytest

from eigenbound.errors import ScenarioError
from eigenbound.scenario import (
    CSV_COLUMNS,
    EXIT_ERROR,
    EXIT_OK,
    EXIT_VIOLATION,
    Scenario,
    content_hash,
    evaluate_scenario,
    load_scenario,
    main_suite,
    run_scenario,
    shipped_scenarios_dir,
)

SHIPPED = shipped_scenarios_dir()
CORRUPTED = os.path.join(SHIPPED, "corrupted")


def _violating(tmp_path):
    spec = {"operator": "laplacian", "dim_n": 2, "values": [1.0, 100.0, 101.0]}
    (tmp_path / "bad.json.spectrum").write_text(json.dumps(spec))
    d = {
        "name": "violating",
        "geometry": {"variant": "box", "lengths": [1, 1]},
        "spectrum_source": {"file": "bad.json.spectrum"},
        "count": 3,
        "inequalities": ["yang1"],
        "k_range": [1, 1],
    }
    return Scenario.from_dict(d, str(tmp_path))


@pytest.mark.parametrize("name", sorted(f for f in os.listdir(SHIPPED) if f.endswith(".json")))
def test_shipped_scenarios_hold(name):
    res = evaluate_scenario(load_scenario(os.path.join(SHIPPED, name)))
    assert res.exit_code == EXIT_OK, res.document.get("error")
    assert res.document["status"] == "ok"
    assert res.document["reports"]


@pytest.mark.parametrize(
    "name,code",
    [
        ("gate_violation.json", "gate_violation"),
        ("descending_spectrum.json", "unsorted_values"),
        ("inverted_cell.json", "degenerate_cell"),
    ],
)
def test_corrupted_fixtures_fail_with_codes(name, code):
    res = evaluate_scenario(load_scenario(os.path.join(CORRUPTED, name)))
    assert res.exit_code == EXIT_ERROR
    assert res.document["error"]["code"] == code


def test_reports_are_deterministic(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    sc = load_scenario(os.path.join(SHIPPED, "cube_all.json"))
    a, b = evaluate_scenario(sc), evaluate_scenario(sc)
    assert a.document == b.document
    assert a.csv_text == b.csv_text
    assert a.document["header"]["timestamp"].startswith("1970-01-01")


def test_content_hash_ignores_timestamp():
    sc = load_scenario(os.path.join(SHIPPED, "cube_yang.json"))
    doc = evaluate_scenario(sc).document
    other = json.loads(json.dumps(doc))
    other["header"]["timestamp"] = "2000-01-01T00:00:00Z"
    assert content_hash(other) == doc["content_hash"]
    other["reports"][0]["lhs"] += 1.0
    assert content_hash(other) != doc["content_hash"]


def test_header_fields():
    doc = evaluate_scenario(load_scenario(os.path.join(SHIPPED, "hemisphere_s3.json"))).document
    h = doc["header"]
    for key in ("scenario", "versions", "geometry", "geometry_hash", "operator", "k_range", "timestamp", "constants"):
        assert key in h
    assert set(h["versions"]) >= {"eigenbound", "kernels", "numpy", "python"}
    assert h["constants"]["derived"]["gate_ok"] is True


def test_csv_and_json_written(tmp_path):
    res = run_scenario(os.path.join(SHIPPED, "cube_yang.json"), str(tmp_path / "out"))
    rows = list(csv.reader(io.StringIO((tmp_path / "out.csv").read_text())))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 11
    assert [r[2] for r in rows[1:]] == [str(k) for k in range(1, 11)]
    assert json.loads((tmp_path / "out.json").read_text()) == res.document


def test_violation_exit_code(tmp_path):
    res = evaluate_scenario(_violating(tmp_path))
    assert res.exit_code == EXIT_VIOLATION
    assert res.document["status"] == "violation"
    assert "false" in res.csv_text


def test_malformed_scenarios(tmp_path):
    with pytest.raises(ScenarioError):
        Scenario.from_dict({"geometry": {"variant": "box", "lengths": [1]}})
    base = {"name": "x", "geometry": {"variant": "box", "lengths": [1]}}
    with pytest.raises(ScenarioError):
        Scenario.from_dict(dict(base, k_range=[3, 2]))
    with pytest.raises(ScenarioError):
        Scenario.from_dict(dict(base, k_range=[1, 5], count=3))
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    with pytest.raises(ScenarioError):
        load_scenario(str(p))


def test_unknown_inequality_is_an_error():
    sc = Scenario.from_dict(
        {"name": "x", "geometry": {"variant": "box", "lengths": [1, 1]}, "inequalities": ["nope"], "k_range": [1, 2]}
    )
    res = evaluate_scenario(sc)
    assert res.exit_code == EXIT_ERROR and res.document["error"]["code"] == "invalid_scenario"


def test_suite_exit_codes(tmp_path):
    out = io.StringIO()
    assert main_suite([SHIPPED], str(tmp_path), out) == EXIT_OK
    assert out.getvalue().count(": ok") == len([f for f in os.listdir(SHIPPED) if f.endswith(".json")])
    assert main_suite([CORRUPTED], str(tmp_path), io.StringIO()) == EXIT_ERROR
    sc = _violating(tmp_path)
    p = tmp_path / "v.json"
    p.write_text(
        json.dumps(
            {
                "name": sc.name,
                "geometry": {"variant": "box", "lengths": [1, 1]},
                "spectrum_source": {"file": "bad.json.spectrum"},
                "count": 3,
                "inequalities": ["yang1"],
                "k_range": [1, 1],
            }
        )
    )
    assert main_suite([str(p)], str(tmp_path), io.StringIO()) == EXIT_VIOLATION
    # errors outrank violations
    assert main_suite([str(p), os.path.join(CORRUPTED, "gate_violation.json")], str(tmp_path), io.StringIO()) == EXIT_ERROR
