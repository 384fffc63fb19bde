import csv
import io

import pytest

from ckp.errors import BenchMismatch
from ckp.model import Instance, save_instance
from ckp.toolkit import bench, filter_trivial
from ckp.toolkit.bench import run_bench, summarize, to_csv
from ckp.toolkit.generator import GenConfig, generate

HEADER = "instance,algo,status,objective,time_ms,states_created,states_fathomed,peak_states"


def _rows(text):
    return list(csv.DictReader(io.StringIO("\n".join(l for l in text.splitlines() if not l.startswith("#")))))


def test_four_items_two_algos(four_items, tmp_path):
    save_instance(four_items, tmp_path / "four_items.ckp")
    records = run_bench(tmp_path, ["dp1", "dp2"])
    assert [(r.algo, r.objective, r.status) for r in records] == [("dp1", 19, "solved"), ("dp2", 19, "solved")]
    text = to_csv(records, summarize(records, tmp_path))
    assert text.splitlines()[0] == HEADER
    assert len(_rows(text)) == 2
    assert "# n4_b10_m2,dp1,1," in text


def test_empty_directory(tmp_path):
    records = run_bench(tmp_path, ["dp1", "dp2"])
    assert records == []
    assert to_csv(records) == HEADER + "\n"


def test_dp1_dp2_agree_on_generated_set(tmp_path):
    for seed in range(100):
        save_instance(generate(GenConfig(n=25, b=200, m=3, seed=seed)), tmp_path / f"g{seed:03d}.ckp")
    records = run_bench(tmp_path, ["dp1", "dp2"])
    assert len(records) == 200
    assert all(r.status == "solved" and r.time_ms >= 0 for r in records)
    by_file = {}
    for r in records:
        by_file.setdefault(r.instance, set()).add(r.objective)
    assert all(len(v) == 1 for v in by_file.values())


def test_worker_pool_gives_same_objectives(tmp_path):
    for seed in range(6):
        save_instance(generate(GenConfig(n=15, b=100, m=2, seed=seed)), tmp_path / f"g{seed}.ckp")
    serial = run_bench(tmp_path, ["dp1", "dp2"])
    pooled = run_bench(tmp_path, ["dp1", "dp2"], workers=2)
    assert [(r.instance, r.algo, r.objective) for r in serial] == [(r.instance, r.algo, r.objective) for r in pooled]


def test_oracle_guard_is_reported(tmp_path):
    save_instance(generate(GenConfig(n=30, b=100, seed=1)), tmp_path / "big.ckp")
    (record,) = run_bench(tmp_path, ["oracle"])
    assert record.status == "too_large" and record.objective is None


def test_mismatch_is_fatal(four_items, tmp_path, monkeypatch):
    save_instance(four_items, tmp_path / "four_items.ckp")

    def broken(instance):
        result = bench.SOLVERS["dp1"](instance)
        result.solution = result.solution.__class__.from_items(instance, [1])
        return result

    monkeypatch.setitem(bench.SOLVERS, "broken", broken)
    with pytest.raises(BenchMismatch):
        run_bench(tmp_path, ["dp1", "broken"])


def test_unknown_algo(tmp_path):
    with pytest.raises(ValueError, match="unknown algorithm"):
        run_bench(tmp_path, ["simplex"])


def test_filter_trivial_moves_files(four_items, tmp_path):
    save_instance(four_items, tmp_path / "four_items.ckp")
    save_instance(Instance.from_rows(2, 10, [(1, 1, 1)]), tmp_path / "easy.ckp")
    found = filter_trivial(tmp_path, move=True)
    assert [f.name for f in found] == ["easy.ckp"]
    assert (tmp_path / "trivial" / "easy.ckp").exists()
    assert (tmp_path / "four_items.ckp").exists()
