"""Benchmark harness: solve every instance file with every algorithm and
write one CSV row per pair, followed by per-class averages."""
from __future__ import annotations

import csv
import io
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Callable, Sequence

from ..dp1 import solve_dp1
from ..dp2 import solve_dp2
from ..errors import BenchMismatch, InstanceTooLarge
from ..model import Instance, read_instance
from ..oracle import brute_force_ckp

PATTERN = "*.ckp"


def _oracle(instance: Instance):
    return brute_force_ckp(instance)


SOLVERS: dict[str, Callable] = {"dp1": solve_dp1, "dp2": solve_dp2, "oracle": _oracle}


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    algo: str
    status: str
    objective: int | None
    time_ms: float
    states_created: int
    states_fathomed: int
    peak_states: int


def run_cell(path: str | Path, algo: str) -> BenchRecord:
    """Solve one file with one algorithm: a warm-up run, then a timed run."""
    path = Path(path)
    instance = read_instance(path)
    solve = SOLVERS[algo]
    try:
        solve(instance)
        start = time.perf_counter()
        result = solve(instance)
        elapsed = (time.perf_counter() - start) * 1000.0
    except InstanceTooLarge:
        return BenchRecord(path.name, algo, "too_large", None, 0.0, 0, 0, 0)
    if algo == "oracle":
        return BenchRecord(path.name, algo, "solved", int(result.value), elapsed, result.count, 0, 0)
    s = result.stats
    return BenchRecord(path.name, algo, "solved", result.profit, elapsed, s.states_created, s.states_fathomed, s.peak_states)


def _instance_class(instance: Instance) -> str:
    return f"n{instance.n}_b{instance.b}_m{instance.m}"


def run_bench(directory: str | Path, algos: Sequence[str] = ("dp1", "dp2"), *, workers: int | None = None) -> list[BenchRecord]:
    """One record per (instance file, algorithm), ordered by file then algorithm.

    Raises :class:`BenchMismatch` if two solved records for one instance
    disagree on the objective.
    """
    for algo in algos:
        if algo not in SOLVERS:
            raise ValueError(f"unknown algorithm {algo!r}; choose from {sorted(SOLVERS)}")
    files = sorted(Path(directory).glob(PATTERN))
    cells = [(str(f), a) for f in files for a in algos]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_cell, *zip(*cells))) if cells else []
    else:
        records = [run_cell(f, a) for f, a in cells]

    by_instance = defaultdict(set)
    for r in records:
        if r.status == "solved":
            by_instance[r.instance].add(r.objective)
    for name, values in by_instance.items():
        if len(values) > 1:
            raise BenchMismatch(f"{name}: solvers disagree on the optimum: {sorted(values)}")
    return records


def summarize(records: Sequence[BenchRecord], directory: str | Path) -> list[tuple]:
    """Averages per (instance class, algo): count, time, states created."""
    classes = {}
    for f in Path(directory).glob(PATTERN):
        classes[f.name] = _instance_class(read_instance(f))
    groups = defaultdict(list)
    for r in records:
        if r.status == "solved":
            groups[(classes.get(r.instance, "?"), r.algo)].append(r)
    rows = []
    for (cls, algo), rs in sorted(groups.items()):
        rows.append((cls, algo, len(rs), sum(r.time_ms for r in rs) / len(rs), sum(r.states_created for r in rs) / len(rs)))
    return rows


def to_csv(records: Sequence[BenchRecord], summary: Sequence[tuple] = ()) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f.name for f in fields(BenchRecord)])
    for r in records:
        row = list(astuple(r))
        row[3] = "" if r.objective is None else r.objective
        row[4] = f"{r.time_ms:.3f}"
        writer.writerow(row)
    if summary:
        buf.write("# summary: class,algo,count,avg_time_ms,avg_states_created\n")
        for cls, algo, count, avg_time, avg_states in summary:
            buf.write(f"# {cls},{algo},{count},{avg_time:.3f},{avg_states:.1f}\n")
    return buf.getvalue()
