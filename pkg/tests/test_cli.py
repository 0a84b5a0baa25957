import json

import pytest

from clarfries.cli import main
from fixtures import BOWTIE_ARCS, BOWTIE_NAMES, benzenoid, BENZENE_CENTERS, NAPHTHALENE_CENTERS


@pytest.fixture
def bowtie_file(tmp_path):
    inst = {
        "nodes": list(BOWTIE_NAMES),
        "arcs": [[u, v] for u, v in BOWTIE_ARCS],
        "w_o": {n: 1 for n in BOWTIE_NAMES},
        "w_i": {n: 1 for n in BOWTIE_NAMES},
    }
    path = tmp_path / "bowtie.json"
    path.write_text(json.dumps(inst))
    return str(path)


@pytest.fixture
def benzene_file(tmp_path):
    data = benzenoid(BENZENE_CENTERS)
    data["w1"] = {"f0": 5}
    data["w2"] = {"f0": 3}
    path = tmp_path / "benzene.json"
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_solve_digraph(capsys, bowtie_file):
    code, out = run(capsys, "solve-digraph", bowtie_file)
    assert code == 0
    assert out["value"] == 4
    assert sorted(out["Y_o"] + out["Y_i"]) == ["a2", "a3", "b1", "b2"]
    assert out["cover_cost"] == 4
    assert all(out["checks"].values())
    assert set(out["potential"]) == set(BOWTIE_NAMES)


def test_solve_digraph_fractional_weights(capsys, tmp_path):
    inst = {
        "nodes": ["u", "v"],
        "arcs": [["u", "v"]],
        "w_o": {"u": "1/2", "v": 0.25},
        "w_i": {"u": 1, "v": "3/2"},
    }
    path = tmp_path / "frac.json"
    path.write_text(json.dumps(inst))
    code, out = run(capsys, "solve-digraph", str(path))
    assert code == 0
    assert out["value"] == 2  # u as source, v as sink: 1/2 + 3/2
    assert out["checks"]["minmax_equal"]


def test_sink_stable(capsys, bowtie_file):
    code, out = run(capsys, "sink-stable", bowtie_file)
    assert code == 0
    assert out["value"] == 2
    assert sorted(out["Y"]) == ["a3", "b1"]
    assert out["circuits"]
    for circuit in out["circuits"]:
        assert circuit["multiplicity"] >= 1
        assert circuit["original_arcs"] >= 1
    assert out["certificate"]["checks"]["pair_verified"]


def test_sink_stable_within(capsys, bowtie_file):
    code, out = run(capsys, "sink-stable", "--within", "a3,b1", bowtie_file)
    assert code == 0
    assert out["value"] == 2
    assert set(out["Y"]) <= {"a3", "b1"}


def test_resonant_within(capsys, bowtie_file):
    code, out = run(capsys, "resonant", "--within", "a1,b1,x", bowtie_file)
    assert code == 0
    assert out["value"] == 2
    assert set(out["Y_o"] + out["Y_i"]) <= {"a1", "b1", "x"}
    assert out["cover_cost"] == 2


def test_clar_and_fries(capsys, benzene_file):
    code, out = run(capsys, "clar", benzene_file)
    assert code == 0
    assert out["value"] == 1
    assert out["clar_set"] == ["f0"]
    assert len(out["matching"]) == 3

    code, out = run(capsys, "fries", benzene_file)
    assert code == 0
    assert out["value"] == 1
    assert out["fries_set"] == ["f0"]


def test_clar_fries_weighted(capsys, benzene_file):
    code, out = run(capsys, "clar-fries", benzene_file)
    assert code == 0
    assert out["value"] == 5
    assert out["cw_faces"] == ["f0"]
    assert out["certificate"]["checks"]["minmax_equal"]


def test_verify_file_and_random(capsys, bowtie_file):
    code, out = run(capsys, "verify", bowtie_file)
    assert code == 0
    assert out == {"agree": True, "solver": 4, "oracle": 4}

    code, out = run(capsys, "verify", "--random", "8", "--seed", "3")
    assert code == 0
    assert out["agree"] is True
    assert out["instances"] == 8


def test_verify_plane_file(capsys, benzene_file):
    code, out = run(capsys, "verify", benzene_file)
    assert code == 0
    assert out["agree"] is True
    assert out["solver"] == 5 == out["oracle"]


def test_budget_flags_give_input_error_exit(capsys, bowtie_file):
    code, out = run(capsys, "verify", "--budget-arcs", "6", bowtie_file)
    assert code == 1
    assert "error" in out


def test_error_exits(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, out = run(capsys, "solve-digraph", str(bad))
    assert code == 1 and "error" in out

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({
        "nodes": ["u", "v"], "arcs": [["u", "v"]],
        "w_o": {"zz": 1}, "w_i": {},
    }))
    code, out = run(capsys, "solve-digraph", str(unknown))
    assert code == 1 and "unknown node" in out["error"]

    code, out = run(capsys, "solve-digraph", str(tmp_path / "missing.json"))
    assert code == 1 and "error" in out

    negative = tmp_path / "negative.json"
    negative.write_text(json.dumps({
        "nodes": ["u", "v"], "arcs": [["u", "v"]],
        "w_o": {"u": -1}, "w_i": {},
    }))
    code, out = run(capsys, "solve-digraph", str(negative))
    assert code == 1


def test_pretty_output(capsys, bowtie_file):
    code = main(["solve-digraph", "--pretty", bowtie_file])
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("\n") > 3
    assert json.loads(out)["value"] == 4
