import json
from fractions import Fraction

import pytest

import stplab

HALF_HARMONIC = {
    "kind": "monotone",
    "profile": {"kind": "power", "coefficient": "1/2", "exponent": "1"},
    "semigroup": "multiplicative",
}
CONSTANT = {"kind": "monotone", "profile": {"kind": "power", "coefficient": "1/10", "exponent": "0"}}


def test_circle_and_measures():
    assert stplab.dist("1/10", "9/10") == "1/5"
    assert stplab.union_measure([("0", "1/4"), ("1/8", "1/4")]) == "5/8"
    assert stplab.t_sequence("lebesgue", "0", 10) == "1/20"
    c = stplab.classify_support("cantor", "1/3")
    assert c["kind"] == "isolated_right"
    assert c["y"] == "2/3"
    assert c["s_x"] == "1/3"


def test_systems_and_counts():
    golden = {"kind": "rotation", "theta": "golden"}
    assert stplab.recurrence_times(golden, "0", 6) == ["1", "2", "3", "5", "8", "13"]
    r = stplab.hit_count({"kind": "mult_expanding"}, ["1/3"], ["0"], CONSTANT, 10)
    assert r["count"] == 3 and r["hits"] == ["3", "6", "9"]
    r = stplab.hit_count({"kind": "rotation", "theta": "1/4"}, ["0"], ["0"], CONSTANT, 8)
    assert r["hits"] == ["4", "8"]
    s = stplab.partial_measure_sum(["0"], HALF_HARMONIC, horizon=4)
    assert Fraction(s["value"]) == Fraction(25, 12) and s["exact"]


def test_tail_unions():
    golden = {"kind": "rotation", "theta": "golden"}
    radius = stplab.counterexample_radius(golden, "0", 100)
    assert radius["kind"] == "shrinking_on_subset"
    p = stplab.tail_unions(golden, "0", radius, 100)
    u = p["u"]
    assert len(u) == 100
    assert all(a >= b for a, b in zip(u, u[1:]))
    assert u[-1] == pytest.approx(0.02)


def test_run_is_deterministic(tmp_path):
    over = {"horizon": 2000, "checkpoints": [100, 1000], "samples": {"count": 8}}
    a = stplab.run("kgs-verify", dict(over, out=str(tmp_path / "a")))
    b = stplab.run("kgs-verify", dict(over, out=str(tmp_path / "b")))
    assert a["exit_code"] == 0
    assert (tmp_path / "a" / "kgs-verify.csv").read_bytes() == (tmp_path / "b" / "kgs-verify.csv").read_bytes()
    assert a["summary"]["result"] == b["summary"]["result"]
    header = (tmp_path / "a" / "kgs-verify.csv").read_text().splitlines()[0]
    assert header == "h,sample_index,N,Psi,ratio"
    summary = json.loads((tmp_path / "a" / "kgs-verify.json").read_text())
    assert summary["config"]["horizon"] == 2000


def test_config_errors():
    assert "oracle-suite" in stplab.experiments()
    assert stplab.default_config("kgs-verify")["samples"]["seed"] == 7
    with pytest.raises(ValueError):
        stplab.run("kgs-verify", {"horizn": 3})
    with pytest.raises(ValueError):
        stplab.run("no-such-experiment")
