"""Instance generation, filtering, export and benchmarking."""
from __future__ import annotations

import shutil
from pathlib import Path

from ..knapsack import is_trivial
from ..model import read_instance
from .bench import BenchRecord, run_bench, summarize, to_csv
from .export import export_ilp
from .generator import GenConfig, generate

TRIVIAL_DIR = "trivial"


def filter_trivial(directory: str | Path, *, move: bool = False) -> list[Path]:
    """Instance files whose plain knapsack optimum is already color-feasible.

    With ``move`` they are relocated into a ``trivial/`` subdirectory.
    """
    directory = Path(directory)
    found = [f for f in sorted(directory.glob("*.ckp")) if is_trivial(read_instance(f))[0]]
    if move and found:
        target = directory / TRIVIAL_DIR
        target.mkdir(exist_ok=True)
        found = [Path(shutil.move(str(f), target / f.name)) for f in found]
    return found


__all__ = [
    "BenchRecord",
    "GenConfig",
    "export_ilp",
    "filter_trivial",
    "generate",
    "is_trivial",
    "run_bench",
    "summarize",
    "to_csv",
]
