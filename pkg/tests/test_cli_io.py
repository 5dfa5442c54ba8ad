import json

import numpy as np
import pytest

from nframe import frame_bounds
from nframe.cli import main
from nframe.errors import InputError
from nframe.generate import generate_instance
from nframe.io import bundled_example, dump_instance, load_instance, parse_instance, to_jsonable

GOOD = {
    "schema_version": "1.0",
    "dim": 3,
    "arity": 2,
    "anchors": [[0.0, 0.0, 1.0]],
    "frame": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
}


def strip_timestamp(report):
    report = dict(report)
    report.pop("timestamp")
    return report


@pytest.mark.parametrize("name, lower, upper", [("parseval.json", 1.0, 1.0), ("diag21.json", 1.0, 2.0)])
def test_bundled_examples(name, lower, upper, tmp_path, capsys):
    inst = load_instance(bundled_example(name))
    b = frame_bounds(inst.frame)
    assert b.lower == pytest.approx(lower) and b.upper == pytest.approx(upper)
    out = tmp_path / "r.json"
    assert main(["analyze", f"examples/{name}", "--json", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["frame_bounds"]["lower"] == pytest.approx(lower)
    assert rep["frame_bounds"]["upper"] == pytest.approx(upper)
    assert "frame bounds" in capsys.readouterr().out


def test_parse_error_names_line_and_column(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "dim": 3,\n  "arity" 2\n}\n')
    assert main(["analyze", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 3" in err and "column" in err


def test_schema_errors_name_the_field():
    doc = dict(GOOD, frame=[[1.0, "x", 0.0]])
    with pytest.raises(InputError, match="frame/0/1"):
        parse_instance(json.dumps(doc))
    with pytest.raises(InputError, match="schema_version"):
        parse_instance(json.dumps(dict(GOOD, schema_version="2.0")))
    with pytest.raises(InputError, match="unexpected"):
        parse_instance(json.dumps(dict(GOOD, unexpected=1)))


@pytest.mark.parametrize(
    "change, pattern",
    [
        ({"frame": [[1.0, 0.0]]}, "3 columns"),
        ({"anchors": [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]}, "1 rows"),
        ({"operators": {"K": [[1.0]]}}, "operators/K"),
        ({"second_frame": [[1.0, 0.0, 0.0]]}, "2 rows"),
        ({"frame": []}, "at least one"),
        ({"anchors": [[0.0, 0.0, 0.0]]}, "dependent"),
        ({"arity": 4}, "arity"),
    ],
)
def test_shape_errors(change, pattern):
    with pytest.raises(InputError, match=pattern):
        parse_instance(json.dumps(dict(GOOD, **change)))


def test_non_finite_numbers_rejected():
    with pytest.raises(InputError, match="non-finite"):
        parse_instance(json.dumps(dict(GOOD, frame="FRAME")).replace('"FRAME"', "[[NaN, 0, 0]]"))


def test_missing_file_is_an_input_error(tmp_path):
    assert main(["analyze", str(tmp_path / "nope.json")]) == 2


def test_advertised_property_failure_exits_one(tmp_path):
    doc = dict(GOOD, frame=[[1.0, 0.0, 0.0]], kind="frame")
    p = tmp_path / "f.json"
    p.write_text(json.dumps(doc))
    assert main(["analyze", str(p)]) == 1


def test_dump_parse_round_trip():
    inst = generate_instance("parseval-disjoint-pair", seed=4, dim=5, arity=3)
    again = parse_instance(json.dumps(dump_instance(inst)))
    np.testing.assert_array_equal(again.frame.elements, inst.frame.elements)
    np.testing.assert_array_equal(again.second_frame.elements, inst.second_frame.elements)
    np.testing.assert_array_equal(again.operators["K"], inst.operators["K"])
    assert again.kind == inst.kind and again.seed == 4


def test_to_jsonable_handles_numpy_and_infinities():
    out = to_jsonable({"a": np.float64(np.inf), "b": np.array([1, 2]), "c": np.bool_(True), "d": -np.inf, "e": np.nan})
    assert out == {"a": "inf", "b": [1, 2], "c": True, "d": "-inf", "e": "nan"}
    json.dumps(out, allow_nan=False)


def test_verify_is_deterministic(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "3.4", "--seed", "7", "--count", "30", "--json", str(p1)]) == 0
    assert main(["verify", "3.4", "--seed", "7", "--count", "30", "--json", str(p2)]) == 0
    r1, r2 = json.loads(p1.read_text()), json.loads(p2.read_text())
    assert strip_timestamp(r1) == strip_timestamp(r2)
    assert r1["passed"] == 30 and r1["seed"] == 7 and r1["prng"].startswith("numpy.random.PCG64")
    assert "30/30 passed" in capsys.readouterr().out


def test_verify_with_fixed_dims(tmp_path):
    p = tmp_path / "a.json"
    assert main(["verify", "axioms", "--count", "2", "--dim", "5", "--arity", "3", "--json", str(p)]) == 0
    rep = json.loads(p.read_text())
    assert all(c["dim"] == 5 and c["arity"] == 3 for c in rep["cases"])


@pytest.mark.parametrize("argv", [["verify", "9.9"], ["verify", "3.4", "--count", "0"], ["verify", "3.4", "--dim", "2", "--arity", "3"]])
def test_verify_input_errors(argv):
    assert main(argv) == 2


def test_bad_tolerance_env(monkeypatch):
    monkeypatch.setenv("NFRAME_TOL", "-1")
    assert main(["verify", "3.4", "--count", "1"]) == 2


def test_loose_tolerance_env_is_reported(monkeypatch, tmp_path):
    monkeypatch.setenv("NFRAME_TOL", "1e-6")
    p = tmp_path / "a.json"
    assert main(["verify", "4.6", "--count", "3", "--json", str(p)]) == 0
    assert json.loads(p.read_text())["tolerances"] == {"identity": 1e-6, "inequality": 1e-6}


def test_generate_writes_analyzable_file(tmp_path):
    out = tmp_path / "g.json"
    assert main(["generate", "frame", "--dim", "4", "--arity", "2", "--size", "5", "--out", str(out)]) == 0
    assert main(["analyze", str(out), "--json", str(tmp_path / "r.json")]) == 0
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["m"] == 5 and rep["frame_bounds"]["is_frame"]


def test_generate_to_stdout_and_size_error(capsys):
    assert main(["generate", "kframe", "--seed", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "kframe"
    assert main(["generate", "frame", "--dim", "4", "--size", "2"]) == 2
