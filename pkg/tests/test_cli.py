import json

import pytest

from rlct.cli import main


def run(capsys, *args):
    code = main(list(args))
    return code, capsys.readouterr().out


def test_construct(capsys):
    code, out = run(capsys, "construct", "--family", "W", "--n", "1", "--p", "5")
    d = json.loads(out)
    assert code == 0 and d["dim"] == 5 and len(d["basis"]) == 5


def test_usage_errors(capsys):
    assert main(["verify", "--suite", "nope"]) == 2
    assert main(["construct", "--family", "W", "--n", "4", "--p", "5"]) == 2
    assert main(["construct", "--family", "H", "--n", "3", "--p", "3"]) == 2
    with pytest.raises(SystemExit):
        main(["construct", "--family", "Z", "--n", "2", "--p", "3"])


def test_dickson(capsys):
    code, out = run(capsys, "dickson", "--m", "1", "--p", "3")
    d = json.loads(out)
    assert code == 0
    assert {c["T_degree"]: c["text"] for c in d} == {1: "2*y1^2", 3: "1"}


def test_weyl_exhaustive(capsys):
    code, out = run(capsys, "weyl", "--n", "2", "--p", "3", "--exhaustive")
    d = json.loads(out)
    assert code == 0 and d["summary"]["fail"] == 0
    orders = [c["detail"].get("order") for c in d["checks"]]
    assert 48 in orders


def test_weights(capsys):
    code, out = run(capsys, "weights", "--family", "W", "--n", "2", "--p", "3")
    d = json.loads(out)
    assert code == 0
    assert len(d["checks"][0]["detail"]["weights"]) == 9


def test_verify_writes_file_and_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        assert main(["verify", "--suite", "embeddings", "--p", "3", "--seed", "1", "--out", str(f)]) == 0
    assert a.read_bytes() == b.read_bytes()
    d = json.loads(a.read_text())
    assert d["summary"]["fail"] == 0
    assert all(set(c) == {"id", "paper_ref", "status", "detail"} for c in d["checks"])


def test_failing_suite_exit_code(capsys):
    # the listed contact torus check fails, so the suite reports failure
    assert main(["verify", "--suite", "tori", "--p", "3"]) == 1
