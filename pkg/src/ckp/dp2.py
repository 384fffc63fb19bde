"""Color-by-color dynamic program.

For each color an inner knapsack DP with a cardinality index lists every
reachable ``(k, weight)`` pair of that color with its best profit. The
outer DP then walks the colors in ascending order over states
``(t, d, q)``: items packed, size of the largest color, weight used.

The outer layers are stored per ``(t, d)`` group as dense numpy rows over
``q``, which lets one inner row be merged into one group with a single
max-plus product.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .knapsack import is_trivial
from .model import Instance, Solution
from .result import SolveResult, SolveStats

NEG = -(2**62)
ABSENT = NEG // 2  # anything below this is an unreachable entry


def _max_count(weights, capacity: int) -> int:
    total = count = 0
    for w in sorted(weights):
        if total + w > capacity:
            break
        total += w
        count += 1
    return count


@dataclass
class ColorPacking:
    """Best profit of every ``(k, weight)`` combination within one color.

    ``table[k, q]`` is the best profit of exactly ``k`` items of ``color``
    weighing exactly ``q``, or below ``ABSENT`` if no stored entry exists.
    """

    color: int
    table: np.ndarray
    items: tuple[int, ...]  # 0-based original indices of the color's items
    _weights: tuple[int, ...] = field(repr=False)
    _updates: list = field(repr=False)

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        ks, qs = np.nonzero(self.table > ABSENT)
        return {(int(k), int(q)): int(self.table[k, q]) for k, q in zip(ks, qs)}

    def triples(self) -> set[tuple[int, int, int]]:
        return {(k, q, f) for (k, q), f in self.entries.items()}

    def subset(self, k: int, q: int) -> tuple[int, ...]:
        """A 1-based item set realising entry ``(k, q)``."""
        out = []
        for pos in range(len(self.items) - 1, -1, -1):
            if k == 0:
                break
            upd, w = self._updates[pos], self._weights[pos]
            if upd is not None and q >= w and upd[k - 1, q - w]:
                out.append(self.items[pos] + 1)
                k -= 1
                q -= w
        assert k == 0 and q == 0, "inner backtracking lost its way"
        return tuple(sorted(out))


@dataclass(frozen=True)
class ColorBounds:
    """Residual bounds over whole colors: ``profit[c, q]`` and
    ``cardinality[c, q]`` cover colors ``c..m``. Row ``m + 1`` is zero and
    row 0 repeats row 1."""

    profit: np.ndarray
    cardinality: np.ndarray


def precompute_color_bounds(instance: Instance) -> ColorBounds:
    b, m = instance.b, instance.m
    profit = np.zeros((m + 2, b + 1), dtype=np.int64)
    card = np.zeros((m + 2, b + 1), dtype=np.int64)
    row = np.zeros(b + 1, dtype=np.int64)
    crow = np.zeros(b + 1, dtype=np.int64)
    for c in range(m, 0, -1):
        for i in instance.items_of_color(c):
            w, p = instance.weights[i - 1], instance.profits[i - 1]
            if w <= b:
                row[w:] = np.maximum(row[w:], row[: b + 1 - w] + p)
                crow[w:] = np.maximum(crow[w:], crow[: b + 1 - w] + 1)
        profit[c], card[c] = row, crow
    profit[0], card[0] = profit[1], card[1]
    return ColorBounds(profit, card)


def other_color_bounds(instance: Instance, color: int) -> tuple[np.ndarray, np.ndarray]:
    """Best profit and largest item count over all items not of ``color``."""
    b = instance.b
    profit = np.zeros(b + 1, dtype=np.int64)
    card = np.zeros(b + 1, dtype=np.int64)
    for w, p, c in instance.items:
        if c != color and w <= b:
            profit[w:] = np.maximum(profit[w:], profit[: b + 1 - w] + p)
            card[w:] = np.maximum(card[w:], card[: b + 1 - w] + 1)
    return profit, card


def inner_dp(
    instance: Instance,
    color: int,
    *,
    lower_bound: int | None = None,
    others: tuple[np.ndarray, np.ndarray] | None = None,
    strict: bool = False,
) -> ColorPacking:
    """Exact-cardinality, exact-weight knapsack over one color.

    With ``others`` (see :func:`other_color_bounds`) the table is pruned:
    entries with too many items to ever be balanced by the other colors
    are dropped, as are entries whose best completion cannot beat
    ``lower_bound``, and per item count only entries that are lighter and
    more profitable than every lighter entry survive. The empty entry is
    always kept.
    """
    b = instance.b
    idx = tuple(i - 1 for i in instance.items_of_color(color))
    weights = tuple(instance.weights[i] for i in idx)
    kmax = _max_count(weights, b)
    table = np.full((kmax + 1, b + 1), NEG, dtype=np.int64)
    table[0, 0] = 0
    updates = []
    for i, w in zip(idx, weights):
        if w > b or kmax == 0:
            updates.append(None)
            continue
        old = table[1:, w:]
        prev = table[:-1, : b + 1 - w]
        cand = prev + instance.profits[i]
        better = (prev > ABSENT) & (cand > old)
        table[1:, w:] = np.where(better, cand, old)
        updates.append(better)

    if others is not None:
        other_profit, other_card = others
        room = b - np.arange(b + 1)
        ks = np.arange(kmax + 1)[:, None]
        drop = ks > 1 + other_card[room][None, :]
        if lower_bound is not None:
            reach = table + other_profit[room][None, :]
            drop |= (reach < lower_bound) | ((reach == lower_bound) & (not strict))
        # Pareto per k: a heavier entry must beat every lighter one
        lighter_best = np.maximum.accumulate(table, axis=1)
        lighter_best = np.concatenate([np.full((kmax + 1, 1), NEG, dtype=np.int64), lighter_best[:, :-1]], axis=1)
        drop |= table <= lighter_best
        drop[0, 0] = False
        table[drop] = NEG
    return ColorPacking(color, table, idx, weights, updates)


@dataclass
class _Group:
    """Outer states sharing ``(t, d)``: profits over ``q`` plus back-pointers."""

    values: np.ndarray
    src: np.ndarray  # index of the source group in the previous layer
    k: np.ndarray
    dq: np.ndarray


def _new_group(b: int) -> _Group:
    return _Group(
        np.full(b + 1, NEG, dtype=np.int64),
        np.full(b + 1, -1, dtype=np.int64),
        np.zeros(b + 1, dtype=np.int64),
        np.zeros(b + 1, dtype=np.int64),
    )


def _max_plus(values: np.ndarray, support: np.ndarray, gains: np.ndarray, b: int):
    """``out[q] = max_s values[q - support[s]] + gains[s]`` with the argmax."""
    qs = np.arange(b + 1)
    src = qs[None, :] - support[:, None]
    valid = src >= 0
    cand = np.where(valid, values[np.clip(src, 0, b)] + gains[:, None], NEG)
    cand[cand < ABSENT] = NEG
    pick = cand.argmax(axis=0)
    return cand[pick, qs], pick


def _dominance(groups: dict[tuple[int, int], _Group]) -> int:
    """Drop ``(t, d, q)`` when another state with the same ``t`` has no larger
    ``d`` or ``q`` and at least the same profit. Returns the number dropped."""
    dropped = 0
    by_t: dict[int, list[int]] = {}
    for t, d in groups:
        by_t.setdefault(t, []).append(d)
    for t, ds in by_t.items():
        best = None  # best profit over d' < d and q' <= q
        for d in sorted(ds):
            vals = groups[(t, d)].values
            lighter = np.concatenate([[NEG], np.maximum.accumulate(vals)[:-1]])
            rival = lighter if best is None else np.maximum(lighter, best)
            kill = (vals > ABSENT) & (rival >= vals)
            dropped += int(kill.sum())
            vals[kill] = NEG
            run = np.maximum.accumulate(vals)
            best = run if best is None else np.maximum(best, run)
    return dropped


def solve_dp2(
    instance: Instance,
    *,
    dominance: bool = True,
    d_reset: bool = True,
    fathoming: bool = True,
    inner_pruning: bool = True,
    initial_lb: int | None = None,
    kp_start: bool = True,
    trace: bool = False,
    keep_layers: bool = False,
) -> SolveResult:
    """Optimal CKP solution by the color-by-color dynamic program.

    The initial bound follows the same policy as the item-by-item DP. With
    ``trace`` the inner tables are returned in ``extra["packings"]``.
    """
    stats = SolveStats()
    if kp_start:
        trivial, witness = is_trivial(instance)
        if trivial:
            return SolveResult(witness, stats, trivial=True)

    b, m = instance.b, instance.m
    bounds = precompute_color_bounds(instance)
    if initial_lb is not None and initial_lb > 0:
        lower_bound, strict = initial_lb, True
    else:
        lower_bound, strict = 0, False
    best_value, best_at = 0, None  # best_at = (layer, (t, d), q)

    start = _new_group(b)
    start.values[0] = 0
    history: list[tuple[list[tuple[int, int]], dict[tuple[int, int], _Group]]] = []
    keys = [(0, 0)]
    layer = {(0, 0): start}
    packings: list[ColorPacking] = []
    layers: list[dict] | None = [] if keep_layers else None

    for c in range(1, m + 1):
        others = other_color_bounds(instance, c) if inner_pruning else None
        packing = inner_dp(instance, c, lower_bound=lower_bound if inner_pruning else None, others=others, strict=strict)
        packings.append(packing)
        rows = []
        for k in range(packing.table.shape[0]):
            support = np.nonzero(packing.table[k] > ABSENT)[0]
            if support.size:
                rows.append((k, support, packing.table[k, support]))

        nxt: dict[tuple[int, int], _Group] = {}
        for gi, (t, d) in enumerate(keys):
            vals = layer[(t, d)].values
            if not (vals > ABSENT).any():
                continue
            for k, support, gains in rows:
                t2, d2 = t + k, max(d, k)
                if d_reset and 2 * d2 <= t2 + 1:
                    d2 = 0
                out, pick = _max_plus(vals, support, gains, b)
                live = out > ABSENT
                stats.states_merged += int(live.sum())
                target = nxt.get((t2, d2))
                if target is None:
                    target = nxt[(t2, d2)] = _new_group(b)
                better = live & (out > target.values)
                target.values[better] = out[better]
                target.src[better] = gi
                target.k[better] = k
                target.dq[better] = support[pick[better]]

        created = sum(int((g.values > ABSENT).sum()) for g in nxt.values())
        stats.states_created += created
        stats.states_merged -= created
        if dominance:
            stats.states_dominated += _dominance(nxt)

        for (t, d), g in nxt.items():
            if 2 * d <= t + 1:
                q = int(g.values.argmax())
                f = int(g.values[q])
                if f > ABSENT and f > best_value:
                    best_value, best_at = f, (len(history), (t, d), q)
                    if f >= lower_bound:
                        lower_bound, strict = f, False

        if fathoming and c < m:
            room = b - np.arange(b + 1)
            rest_profit = bounds.profit[c + 1][room]
            rest_card = bounds.cardinality[c + 1][room]
            for (t, d), g in nxt.items():
                live = g.values > ABSENT
                reach = g.values + rest_profit
                by_bound = live & ((reach < lower_bound) | ((reach == lower_bound) & (not strict)))
                by_count = live & ~by_bound & (2 * d > t + 1 + rest_card)
                stats.fathomed_bound += int(by_bound.sum())
                stats.fathomed_infeasible += int(by_count.sum())
                g.values[by_bound | by_count] = NEG

        history.append((keys, nxt))
        keys = sorted(nxt)
        layer = nxt
        live_count = sum(int((g.values > ABSENT).sum()) for g in nxt.values())
        stats.peak_states = max(stats.peak_states, live_count)
        if layers is not None:
            layers.append({
                (t, d, int(q)): int(g.values[q])
                for (t, d), g in nxt.items()
                for q in np.nonzero(g.values > ABSENT)[0]
            })

    chosen: list[int] = []
    path = []
    if best_at is not None:
        pos, key, q = best_at
        while pos >= 0:
            prev_keys, groups = history[pos]
            g = groups[key]
            k, dq = int(g.k[q]), int(g.dq[q])
            chosen.extend(packings[pos].subset(k, dq))
            path.append((key[0], key[1], q))
            key, q = prev_keys[int(g.src[q])], q - dq
            pos -= 1
    solution = Solution.from_items(instance, chosen)
    assert solution.profit == best_value and solution.is_feasible(instance)
    extra = {"path": tuple(reversed(path))}
    if trace:
        extra["packings"] = packings
    return SolveResult(solution, stats, layers=layers, extra=extra)
