"""Plain 0/1 knapsack dynamic programs shared by the CKP solvers.

All tables use "weight at most q" semantics, so every row is nondecreasing
in ``q`` and negative-profit items are simply never taken.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import Instance, Solution


def kp_table(weights: Sequence[int], profits: Sequence[int], capacity: int) -> np.ndarray:
    """Forward table ``F[i, q]``: best profit from the first ``i`` items."""
    n = len(weights)
    table = np.zeros((n + 1, capacity + 1), dtype=np.int64)
    for i, (w, p) in enumerate(zip(weights, profits)):
        row = table[i].copy()
        if w <= capacity:
            np.maximum(row[w:], table[i, : capacity + 1 - w] + p, out=row[w:])
        table[i + 1] = row
    return table


def solve_kp(weights: Sequence[int], profits: Sequence[int], capacity: int) -> tuple[int, list[int]]:
    """Optimal plain-KP value and a 0-based item list.

    Backtracking walks from the last item and prefers not packing on ties,
    which biases the witness toward small indices.
    """
    table = kp_table(weights, profits, capacity)
    q = capacity
    chosen = []
    for i in range(len(weights), 0, -1):
        if table[i, q] != table[i - 1, q]:
            chosen.append(i - 1)
            q -= weights[i - 1]
    chosen.reverse()
    return int(table[-1, capacity]), chosen


def is_trivial(instance: Instance) -> tuple[bool, Solution]:
    """Whether the plain-KP optimum found by :func:`solve_kp` is already CKP-feasible."""
    _, chosen = solve_kp(instance.weights, instance.profits, instance.b)
    witness = Solution.from_items(instance, [i + 1 for i in chosen], order=False)
    if witness.color_feasible:
        witness = Solution.from_items(instance, witness.selected)
    return witness.color_feasible, witness


@dataclass(frozen=True)
class SuffixTables:
    """Residual bounds over item suffixes, indexed ``[position, capacity]``.

    Row ``j`` covers positions ``j..n-1`` of the sequence the tables were
    built for; row ``n`` is all zeros. ``pack[j, q]`` records whether the
    backtracked bound solution of ``(j, q)`` takes item ``j``. The statistic
    tables (``count``, ``same``, ``dominant``) describe that bound solution
    and are only meaningful when the sequence is sorted by color.
    """

    profit: np.ndarray
    cardinality: np.ndarray
    pack: np.ndarray
    count: np.ndarray
    same: np.ndarray
    dominant: np.ndarray

    def bound_items(self, weights: Sequence[int], start: int, capacity: int) -> list[int]:
        """Positions of the bound solution behind ``profit[start, capacity]``."""
        out = []
        q = capacity
        for j in range(start, self.pack.shape[0]):
            if self.pack[j, q]:
                out.append(j)
                q -= weights[j]
        return out


def suffix_tables(
    weights: Sequence[int], profits: Sequence[int], colors: Sequence[int], capacity: int
) -> SuffixTables:
    n = len(weights)
    shape = (n + 1, capacity + 1)
    best = np.zeros(shape, dtype=np.int64)
    card = np.zeros(shape, dtype=np.int64)
    pack = np.zeros((n, capacity + 1), dtype=bool)
    count = np.zeros(shape, dtype=np.int64)
    same = np.zeros(shape, dtype=np.int64)
    dominant = np.zeros(shape, dtype=np.int64)
    other = np.zeros(shape, dtype=np.int64)  # max count among colors != colors[j]
    qs = np.arange(capacity + 1)

    for j in range(n - 1, -1, -1):
        w, p = weights[j], profits[j]
        nxt = best[j + 1]
        row = nxt.copy()
        crow = card[j + 1].copy()
        take = np.zeros(capacity + 1, dtype=bool)
        if w <= capacity:
            cand = nxt[: capacity + 1 - w] + p
            take[w:] = cand > nxt[w:]
            row[w:] = np.maximum(nxt[w:], cand)
            np.maximum(crow[w:], card[j + 1, : capacity + 1 - w] + 1, out=crow[w:])
        best[j], card[j], pack[j] = row, crow, take

        src = np.where(take, qs - w, qs)
        inc = take.astype(np.int64)
        count[j] = count[j + 1, src] + inc
        if j + 1 < n and colors[j + 1] == colors[j]:
            same[j] = same[j + 1, src] + inc
            other[j] = other[j + 1, src]
        else:
            same[j] = inc
            other[j] = dominant[j + 1, src]
        dominant[j] = np.maximum(same[j], other[j])

    return SuffixTables(best, card, pack, count, same, dominant)
