import json
import subprocess
import sys
from pathlib import Path

import pytest

from ckp.cli import main
from ckp.model import read_instance, save_instance

GOLDEN = Path(__file__).parent / "golden" / "four_items.lp"


@pytest.fixture
def four_items_file(four_items, tmp_path):
    path = tmp_path / "four_items.ckp"
    save_instance(four_items, path)
    return path


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.mark.parametrize("algo", ["dp1", "dp2", "oracle"])
def test_solve(algo, four_items_file, capsys):
    assert main(["solve", "--algo", algo, str(four_items_file)]) == 0
    (out,) = _json_lines(capsys.readouterr().out)
    assert out["profit"] == 19 and out["items"] == [1, 3, 4]
    assert out["ordering"] == [3, 1, 4]


def test_solve_with_toggles(four_items_file, capsys):
    assert main(["solve", "--algo", "dp1", "--no-fathoming3", "--no-dominance1", "--no-kp-start", str(four_items_file)]) == 0
    (out,) = _json_lines(capsys.readouterr().out)
    assert out["profit"] == 19 and out["stats"]["fathomed_improve"] == 0


def test_solve_rejects_foreign_toggle(four_items_file, capsys):
    assert main(["solve", "--algo", "dp2", "--no-fathoming1", str(four_items_file)]) == 1
    err = capsys.readouterr().err
    assert err.startswith("ckp: error:") and len(err.strip().splitlines()) == 1


def test_lp_relax(four_items_file, capsys):
    assert main(["lp-relax", str(four_items_file)]) == 0
    (out,) = _json_lines(capsys.readouterr().out)
    assert out["value"] == "67/3" and out["fractional_support"] == [2, 3] and out["tight_color"] == 1


def test_generate_and_export(tmp_path, capsys):
    target = tmp_path / "g.ckp"
    assert main(["generate", "--n", "12", "--b", "80", "--m", "3", "--seed", "4", "--out", str(target)]) == 0
    assert read_instance(target).n == 12
    assert main(["generate", "--family", "zipf", "--n", "5", "--b", "50", "--m", "2"]) == 0
    assert capsys.readouterr().out.startswith("5 2 50\n")


def test_export_lp(four_items_file, tmp_path):
    out = tmp_path / "four_items.lp"
    assert main(["export-lp", str(four_items_file), "--out", str(out)]) == 0
    assert out.read_text() == GOLDEN.read_text()


def test_bench_and_filter(four_items_file, tmp_path, capsys):
    csv_path = tmp_path / "results.csv"
    assert main(["bench", str(tmp_path), "--algos", "dp1,dp2", "--out", str(csv_path)]) == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("instance,algo,status") and len([l for l in lines if l.startswith("four_items")]) == 2
    assert main(["filter-trivial", str(tmp_path)]) == 0
    summary = _json_lines(capsys.readouterr().out)[-1]
    assert summary == {"total": 1, "trivial": 0, "fraction": 0.0}


def test_errors_are_one_line(tmp_path, capsys):
    bad = tmp_path / "bad.ckp"
    bad.write_text("1 2 10\n1 1 3\n")
    assert main(["solve", str(bad)]) == 1
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and "color out of range" in err[0]
    assert main(["solve", str(tmp_path / "missing.ckp")]) == 1
    assert main(["filter-trivial", str(bad)]) == 1


def test_module_entry_point(four_items_file):
    proc = subprocess.run([sys.executable, "-m", "ckp", "solve", str(four_items_file)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["profit"] == 19
