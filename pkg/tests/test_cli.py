import json
import subprocess
import sys
from pathlib import Path

import pytest

from spatial_cubes.cli import FALSE, INDETERMINATE, INVALID, OK, USAGE, run

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_special_on_salvetti(capsys):
    code, out, _ = call(capsys, "check", "special", DATA / "salvetti-ab-edge.json")
    assert code == OK
    assert json.loads(out)["special"] is True


def test_diagonal_torus_is_not_cospatial(capsys):
    code, out, _ = call(capsys, "check", "cospatial", DATA / "diagonal-torus.json",
                        "--graph", DATA / "ab-edge.json")
    assert code == FALSE
    assert json.loads(out)["verdict"] == "false"
    code, out, _ = call(capsys, "check", "cospatial", DATA / "diagonal-torus.json",
                        "--graph", DATA / "ab-edge.json", "--bound-subsets", "0")
    assert code == INDETERMINATE


def test_spine_of_f2(capsys, tmp_path):
    dot = tmp_path / "spine.dot"
    code, out, _ = call(capsys, "spine", DATA / "f2.json", "--dot", dot)
    assert code == OK
    doc = json.loads(out)
    assert len(doc["objects"]) == 2 and len(doc["arrows"]) == 1
    assert dot.read_text().count("->") == 1


def test_collapse_checks(capsys):
    sq = DATA / "identified-subdivided-square.json"
    assert call(capsys, "check", "weak", sq, "--hyperplanes", "0,1")[0] == OK
    assert call(capsys, "check", "strong", sq, "--hyperplanes", "0,1")[0] == FALSE
    assert call(capsys, "check", "special", DATA / "osculating-annulus.json")[0] == FALSE
    assert call(capsys, "check", "cat0", DATA / "salvetti-ab-edge.json")[0] == FALSE
    assert call(capsys, "check", "median", DATA / "salvetti-ab-edge.json")[0] == FALSE  # loops


def test_blowup_pipeline(capsys, tmp_path):
    code, out, _ = call(capsys, "partitions", DATA / "abc-ab.json", "--collections")
    doc = json.loads(out)
    assert code == OK and len(doc["partitions"]) == 4 and len(doc["collections"]) == 9
    target = tmp_path / "b.json"
    assert call(capsys, "blowup", DATA / "abc-ab.json", "--collection", "0", "-o", target)[0] == OK
    b = json.loads(target.read_text())
    assert b["schema"] == "blowup/v1"
    assert call(capsys, "check", "cospatial", target)[0] == OK
    assert call(capsys, "check", "redundant", target)[0] == FALSE
    P = next(x["hyperplane"] for x in b["labels"] if "partition" in x)
    assert call(capsys, "check", "tree-like", target, "--hyperplanes", str(P))[0] == OK
    code, out, _ = call(capsys, "collapse", target, "--hyperplanes", str(P))
    assert code == OK and json.loads(out)["range"]["schema"] == "cubecomplex/v1"
    code, out, _ = call(capsys, "subdivide", target, "--hyperplane", str(P))
    assert code == OK
    sub = tmp_path / "s.json"
    sub.write_text(out)
    assert call(capsys, "check", "redundant", sub)[0] == OK


def test_sageev_and_random(capsys, tmp_path):
    w = tmp_path / "w.json"
    assert call(capsys, "random-wallspace", "--seed", "7", "-o", w)[0] == OK
    assert w.read_text() == (DATA / "wallspace-seed7.json").read_text()
    code, out, _ = call(capsys, "sageev", w)
    assert code == OK
    c = tmp_path / "c.json"
    c.write_text(out)
    assert call(capsys, "check", "cat0", c)[0] == OK
    code, out, _ = call(capsys, "sageev", w, "--format", "dot")
    assert out.startswith("digraph")


def test_salvetti_dot(capsys):
    code, out, _ = call(capsys, "salvetti", DATA / "abc-ab.json", "--format", "dot")
    assert code == OK and out.count("->") == 3


def test_usage_and_invalid_input(capsys, tmp_path):
    assert call(capsys, "frobnicate")[0] == USAGE
    assert call(capsys, "check", "nonsense", DATA / "f2.json")[0] == USAGE
    assert call(capsys, "spine", DATA / "f2.json", "--jobs", "0")[0] == USAGE
    code, _, err = call(capsys, "salvetti", tmp_path / "missing.json")
    assert code == INVALID and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call(capsys, "salvetti", bad)[0] == INVALID
    assert call(capsys, "blowup", DATA / "f2.json", "--collection", "0,1")[0] == INVALID
    assert call(capsys, "blowup", DATA / "f2.json", "--collection", "9")[0] == INVALID
    assert call(capsys, "check", "tree-like", DATA / "diagonal-torus.json")[0] == INVALID
    assert call(capsys, "subdivide", DATA / "diagonal-torus.json", "--hyperplane", "7")[0] == INVALID


def test_bound_exceeded_is_indeterminate(capsys):
    assert call(capsys, "partitions", DATA / "f3.json", "--bound", "4")[0] == INDETERMINATE


def test_output_is_deterministic(capsys):
    runs = [call(capsys, "spine", DATA / "abc-ab.json")[1] for _ in range(2)]
    assert runs[0] == runs[1]
    assert call(capsys, "spine", DATA / "abc-ab.json", "--jobs", "2")[1] == runs[0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spatial_cubes", "check", "special",
                           str(DATA / "salvetti-ab-edge.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["check"] == "special"
