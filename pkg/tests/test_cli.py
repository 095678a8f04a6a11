import csv
import json
import subprocess
import sys

import pytest

from oracles import lint_svg
from setmerge.cli import main


@pytest.fixture
def single(tmp_path):
    p = tmp_path / "one.txt"
    p.write_text("a: x\n")
    return p


def test_simplify_summary_for_movies(tmp_path, capsys):
    assert main(["simplify", "builtin:movies", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[-1] == "planarity=1 concurrency=1 zones=12"
    dual = json.loads((tmp_path / "dual.json").read_text())
    merges = json.loads((tmp_path / "merges.json").read_text())
    assert len(dual["zones"]) == 12
    assert [s["reason"] for s in merges["steps"]] == ["planarity", "concurrency"]


def test_simplify_single_set(single, capsys):
    assert main(["simplify", str(single)]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1] == "planarity=0 concurrency=0 zones=2"


def test_simplify_stage_initial(tmp_path, capsys):
    assert main(["simplify", "builtin:movies", "--stage", "initial", "--out", str(tmp_path)]) == 0
    assert len(json.loads((tmp_path / "dual.json").read_text())["zones"]) == 16


def test_structured_input_flag(tmp_path, capsys):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"sets": [{"label": "a", "elements": ["x"]}]}))
    assert main(["simplify", str(p), "--format", "structured"]) == 0


def test_errors_give_nonzero_status(tmp_path, capsys):
    assert main(["simplify", str(tmp_path / "missing.txt")]) != 0
    bad = tmp_path / "bad.txt"
    bad.write_text("a: x\na: y\n")
    assert main(["simplify", str(bad)]) != 0
    assert "duplicate" in capsys.readouterr().err
    assert main(["simplify", "builtin:nothing"]) != 0


def test_render_is_deterministic(tmp_path, capsys):
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    args = ["render", "builtin:movies", "--seed", "1", "--refine-iterations", "100", "--smooth-iterations", "20"]
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert lint_svg(first.read_text()) == []


def test_render_stages_and_sidecar(tmp_path, capsys):
    initial = tmp_path / "i.svg"
    assert main(["render", "builtin:movies", "--stage", "initial", "--out", str(initial)]) == 0
    assert lint_svg(initial.read_text()) == []
    coords = tmp_path / "c.json"
    planar = tmp_path / "p.svg"
    assert main(["render", "builtin:movies", "--stage", "planar", "--show-dual", "--refine-iterations", "20",
                 "--smooth-iterations", "5", "--out", str(planar), "--coords", str(coords)]) == 0
    doc = json.loads(coords.read_text())
    assert sorted(doc["curves"]) == list("abcefg")


def test_stats_on_single_instance(single, tmp_path, capsys):
    out = tmp_path / "stats.csv"
    assert main(["stats", str(single.parent), "--csv", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["name"] for r in rows] == ["one.txt", "mean"]
    row, mean = rows
    for col in ("planarity_merges", "concurrency_merges", "total_merges"):
        assert float(row[col]) == 0 == float(mean[col])
    assert float(mean["n_sets"]) == float(row["n_sets"]) == 1


def test_stats_continue_past_bad_files(tmp_path, caplog):
    (tmp_path / "a.txt").write_text("a: x\nb: x, y\n")
    (tmp_path / "b.txt").write_text("a: x\na: y\n")
    (tmp_path / "c.txt").write_text("a: x, y\nb: y, z\nc: z, x\n")
    out = tmp_path / "s.csv"
    assert main(["stats", str(tmp_path), "--csv", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["name"] for r in rows] == ["a.txt", "c.txt", "mean"]
    for col in ("n_sets", "total_merges"):
        assert float(rows[-1][col]) == pytest.approx((float(rows[0][col]) + float(rows[1][col])) / 2)
    for r in rows[:-1]:
        assert int(r["total_merges"]) == int(r["planarity_merges"]) + int(r["concurrency_merges"])
        assert int(r["final_concurrency"]) == 0
    assert "b.txt" in caplog.text


def test_console_script_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "setmerge.cli", "simplify", "builtin:southern-women"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip().splitlines()[-1] == "planarity=1 concurrency=4 zones=12"
