import json
from fractions import Fraction

import pytest
from hypothesis import given

from bicrit.cli import main, parse_rho
from bicrit.core import Instance
from bicrit.io import (InputError, instance_from_json, instance_to_json, metric_from_json,
                       parse_rat, rat, read_json, schedule_from_json, schedule_to_json)
from bicrit.schedulers import spt

from conftest import instance_and_schedule


@given(instance_and_schedule(model="R"))
def test_roundtrips(pair):
    inst, S = pair
    assert instance_from_json(json.loads(json.dumps(instance_to_json(inst)))) == inst
    assert schedule_from_json(json.loads(json.dumps(schedule_to_json(S)))) == S


def test_rationals():
    assert rat(Fraction(7, 6)) == "7/6"
    assert rat(3) == "3/1"
    assert parse_rat("7/6") == Fraction(7, 6)
    assert parse_rat(2.5) == Fraction(5, 2)
    assert parse_rat(0.1) == Fraction(1, 10)
    with pytest.raises(InputError):
        parse_rat(True)


def test_bad_inputs(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"model": "P",\n "machines": 2,,}')
    with pytest.raises(InputError, match=r"bad\.json:2:\d+"):
        read_json(bad)
    with pytest.raises(InputError):
        instance_from_json({"model": "P"})
    with pytest.raises(InputError):
        metric_from_json({"weights": [1]})


@pytest.fixture
def files(tmp_path, small):
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(instance_to_json(small)))
    metric = tmp_path / "metric.json"
    metric.write_text(json.dumps({"points": [[0, 0], [1, 0], [1, 1], [0, 1]], "start": 0}))
    return tmp_path, inst, metric


def test_cli_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  nope")
    assert main(["oracle", "--input", str(bad)]) == 2
    assert "bad.json:2:" in capsys.readouterr().err
    assert main(["oracle", "--input", str(tmp_path / "missing.json")]) == 2


def test_cli_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nosuch"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["--help"])
    assert e.value.code == 0
    out = capsys.readouterr().out
    for sub in ("oracle", "schedule", "frontier", "analyze", "game", "equalizer",
                "repairman", "suite"):
        assert sub in out


def test_cli_analyze(capsys):
    assert main(["analyze", "--rho", "1"]) == 0
    assert "beta=1.581977" in capsys.readouterr().out


def test_parse_rho():
    assert parse_rho("ln2") == pytest.approx(0.693147, abs=1e-6)
    assert parse_rho("balanced") == pytest.approx(0.806466, abs=1e-6)


def test_cli_oracle_schedule_frontier(files, small):
    tmp, inst, _ = files
    out = tmp / "o.json"
    assert main(["oracle", "--input", str(inst), "--out", str(out)]) == 0
    data = read_json(out)
    assert data["makespan"] == "6/1" and data["weighted"] == "13/1"
    assert main(["schedule", "--input", str(inst), "--rho", "1", "--out", str(out)]) == 0
    data = read_json(out)
    assert data["within_guarantee"] is True
    assert parse_rat(data["makespan_ratio"]) <= 2
    assert main(["schedule", "--input", str(inst), "--avg", "wspt", "--tail", "lpt",
                 "--out", str(out)]) == 0
    csv_path = tmp / "f.csv"
    assert main(["frontier", "--input", str(inst), "--out", str(csv_path)]) == 0
    assert csv_path.read_text().splitlines()[0] == "alpha,makespan_ratio,avg_ratio"


def test_cli_analysis_commands(tmp_path):
    out = tmp_path / "g.json"
    assert main(["game", "--rho", "1", "--grid", "200", "--out", str(out)]) == 0
    assert read_json(out)["gap"] <= 1e-3
    eq = tmp_path / "eq.csv"
    assert main(["equalizer", "--rho", "1", "--samples", "20", "--out", str(eq)]) == 0
    assert len(eq.read_text().splitlines()) == 21


def test_cli_repairman(files):
    tmp, _, metric = files
    out = tmp / "r.json"
    assert main(["repairman", "--input", str(metric), "--rho", "1", "--out", str(out)]) == 0
    data = read_json(out)
    assert data["pass"] is True and data["tsp_opt"] == "4/1"


def test_cli_suite_and_audit(tmp_path, capsys):
    js, cs = tmp_path / "s.json", tmp_path / "s.csv"
    args = ["suite", "--count", "20", "--seed", "3", "--workers", "1",
            "--json", str(js), "--csv", str(cs)]
    assert main(args) == 0
    first = (js.read_bytes(), cs.read_bytes())
    assert cs.read_text().splitlines()[0] == "instance,rho,t,alpha,cmax_ratio,avg_ratio,stretch,pass"
    assert main(args) == 0
    assert (js.read_bytes(), cs.read_bytes()) == first
    assert main(["suite", "--audit", str(js)]) == 0
    assert "audit: 0 discrepancies" in capsys.readouterr().out
    # tamper with one ratio and the audit must notice
    data = json.loads(js.read_text())
    data["records"][0]["best"][0]["avg_ratio"] = "1/1000"
    js.write_text(json.dumps(data))
    assert main(["suite", "--audit", str(js)]) == 1
    assert main(["suite", "--count", "0"]) == 0
    assert main(["suite", "--n", "3:11"]) == 2
