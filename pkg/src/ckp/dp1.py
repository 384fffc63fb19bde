"""Item-by-item dynamic program over states ``(t, d, a, q)``.

``t`` counts packed items, ``d`` the packed items of a dominant color, ``a``
the packed items of the color currently being scanned and ``q`` the weight
used. Items are scanned grouped by color. Layers are sparse dicts from key
to ``(profit, node)``, where ``node`` points into an append-only arena of
pack decisions used for backtracking.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .knapsack import SuffixTables, is_trivial, suffix_tables
from .model import Instance, Solution
from .result import SolveResult, SolveStats, TraceEvent

KEEP = "keep"
BOUND = "bound"
INFEASIBLE = "infeasible"
IMPROVE = "improve"


@dataclass(frozen=True)
class ColorOrder:
    """Items sorted stably by color, with per-position lookahead counts."""

    order: tuple[int, ...]  # position -> original 0-based index
    weights: tuple[int, ...]
    profits: tuple[int, ...]
    colors: tuple[int, ...]
    next_color_start: tuple[int, ...]  # first later position with another color
    remaining_same: tuple[int, ...]  # later positions sharing this color
    capacity: int

    @classmethod
    def of(cls, instance: Instance) -> "ColorOrder":
        order = tuple(sorted(range(instance.n), key=lambda i: (instance.colors[i], i)))
        colors = tuple(instance.colors[i] for i in order)
        n = len(order)
        nxt = [n] * n
        same = [0] * n
        for j in range(n - 2, -1, -1):
            if colors[j + 1] == colors[j]:
                nxt[j] = nxt[j + 1]
                same[j] = same[j + 1] + 1
            else:
                nxt[j] = j + 1
        return cls(
            order,
            tuple(instance.weights[i] for i in order),
            tuple(instance.profits[i] for i in order),
            colors,
            tuple(nxt),
            tuple(same),
            instance.b,
        )

    def color_ends_at(self, position: int) -> bool:
        return self.next_color_start[position] == position + 1


def precompute_bounds(instance: Instance) -> SuffixTables:
    """Residual profit/cardinality tables over the color-sorted item sequence.

    Row ``j`` describes the sorted positions ``j, j+1, ...`` (0-based), so
    the residual bound after deciding position ``j`` lives in row ``j + 1``.
    """
    seq = ColorOrder.of(instance)
    return suffix_tables(seq.weights, seq.profits, seq.colors, instance.b)


def _value(entry) -> int:
    return entry[0] if isinstance(entry, tuple) else entry


def apply_dominance1(states: Mapping[tuple, object]) -> dict:
    """Drop states beaten by another state with the same ``t``.

    ``s1`` beats ``s2`` when it has no larger ``d``, ``a`` or ``q`` and at
    least the same profit. Values may be bare profits or ``(profit, ...)``
    tuples; the surviving entries are returned unchanged.
    """
    by_t: dict[int, list] = {}
    for key in states:
        by_t.setdefault(key[0], []).append(key)
    kept = {}
    for t, keys in by_t.items():
        keys.sort(key=lambda k: (k[3], k[1], k[2], -_value(states[k])))
        if all(k[2] == 0 for k in keys):
            # flat a: a running best profit per d is enough
            best_by_d: dict[int, int] = {}
            for k in keys:
                f = _value(states[k])
                if any(d <= k[1] and bf >= f for d, bf in best_by_d.items()):
                    continue
                kept[k] = states[k]
                if f > best_by_d.get(k[1], f - 1):
                    best_by_d[k[1]] = f
        else:
            survivors: list[tuple] = []
            for k in keys:
                f = _value(states[k])
                if any(s[1] <= k[1] and s[2] <= k[2] and _value(states[s]) >= f for s in survivors):
                    continue
                survivors.append(k)
                kept[k] = states[k]
    return kept


def apply_dominance2(key: tuple[int, int, int, int], at_boundary: bool, remaining_in_color: int):
    """Forget dominance information that can no longer matter.

    At a color boundary a state whose dominant color is already safe drops
    ``d``. Inside a color, ``remaining_in_color`` further items of the
    current color bound how far ``a`` can still grow.
    """
    t, d, a, q = key
    if at_boundary:
        if 2 * d <= t + 1:
            d = 0
        return (t, d, a, q)
    if 2 * d <= t + 1 and 2 * (a + remaining_in_color) <= t + 1:
        return (t, 0, 0, q)
    if a + remaining_in_color <= d:
        a = 0
    return (t, d, a, q)


def apply_fathoming(
    key: tuple[int, int, int, int],
    value: int,
    position: int,
    lower_bound: int,
    tables: SuffixTables,
    seq: ColorOrder,
    *,
    bound: bool = True,
    infeasible: bool = True,
    union: bool = True,
    strict: bool = False,
) -> tuple[str, int | None, list[int]]:
    """Decide the fate of a state created at sorted ``position``.

    Returns ``(kind, new_lower_bound, bound_positions)``; the last two are
    only set for ``improve``, where the state plus the residual bound
    solution is color-feasible and becomes the new incumbent.
    ``strict`` fathoms by bound only below (not at) ``lower_bound``, for
    bounds that come without a witness.
    """
    t, d, a, q = key
    room = seq.capacity - q
    nxt = position + 1
    if infeasible:
        helpers = tables.cardinality[nxt if a < d else seq.next_color_start[position], room]
        if 2 * d > t + 1 + helpers:
            return INFEASIBLE, None, []
    best_rest = int(tables.profit[nxt, room])
    if bound:
        if value + best_rest < lower_bound or (not strict and value + best_rest == lower_bound):
            return BOUND, None, []
    if union:
        rest_count = int(tables.count[nxt, room])
        # the residual solution only shares a color with the state when the
        # next item continues the current color
        rest_same = int(tables.same[nxt, room]) if nxt < len(seq.order) and seq.colors[nxt] == seq.colors[position] else 0
        top = max(d, a + rest_same, int(tables.dominant[nxt, room]))
        if 2 * top <= t + rest_count + 1:
            new_lb = value + best_rest
            if new_lb > lower_bound or (strict and new_lb == lower_bound):
                return IMPROVE, new_lb, tables.bound_items(seq.weights, nxt, room)
            return IMPROVE, None, []
    return KEEP, None, []


def solve_dp1(
    instance: Instance,
    *,
    dominance1: bool = True,
    dominance2: bool = True,
    fathoming1: bool = True,
    fathoming2: bool = True,
    fathoming3: bool = True,
    initial_lb: int | None = None,
    kp_start: bool = True,
    trace: bool = False,
    keep_layers: bool = False,
) -> SolveResult:
    """Optimal CKP solution by the item-by-item dynamic program.

    With ``kp_start`` the plain knapsack optimum is computed first and
    returned directly when it already satisfies the color condition.
    ``initial_lb`` seeds the primal bound without a witness; otherwise the
    empty packing (profit 0) is the starting incumbent.
    """
    stats = SolveStats()
    if kp_start:
        trivial, witness = is_trivial(instance)
        if trivial:
            return SolveResult(witness, stats, trivial=True, trace=[] if trace else None)

    seq = ColorOrder.of(instance)
    n = instance.n
    tables = suffix_tables(seq.weights, seq.profits, seq.colors, instance.b)
    parent: list[int] = []
    packed: list[int] = []

    def chain(node: int) -> list[int]:
        out = []
        while node >= 0:
            out.append(packed[node])
            node = parent[node]
        return out

    def original(positions) -> tuple[int, ...]:
        return tuple(sorted(seq.order[j] + 1 for j in positions))

    events: list[TraceEvent] | None = [] if trace else None
    layers: list[dict] | None = [] if keep_layers else None

    best_value, best_node, best_extra, best_key = 0, -1, [], (0, 0, 0, 0)
    if initial_lb is not None and initial_lb > 0:
        lower_bound, strict = initial_lb, True
    else:
        lower_bound, strict = 0, False

    layer: dict[tuple, tuple[int, int]] = {(0, 0, 0, 0): (0, -1)}
    for j in range(n):
        w, p, color = seq.weights[j], seq.profits[j], seq.colors[j]
        new_color = j > 0 and color != seq.colors[j - 1]
        rest = seq.remaining_same[j]
        nxt: dict[tuple, tuple[int, int]] = {}

        def put(key, f, node):
            if dominance2:
                key = apply_dominance2(key, False, rest)
            old = nxt.get(key)
            if old is None:
                stats.states_created += 1
                nxt[key] = (f, node)
            else:
                stats.states_merged += 1
                if f > old[0]:
                    nxt[key] = (f, node)

        for (t, d, a, q), (f, node) in sorted(layer.items()):
            if new_color:
                a = 0
                if dominance2:
                    t, d, a, q = apply_dominance2((t, d, a, q), True, 0)
            put((t, d, a, q), f, node)
            if q + w <= instance.b:
                parent.append(node)
                packed.append(j)
                put((t + 1, d + (a == d), a + 1, q + w), f + p, len(packed) - 1)

        if dominance1 and seq.color_ends_at(j) and j + 1 < n:
            flat: dict[tuple, tuple[int, int]] = {}
            for (t, d, a, q), entry in nxt.items():
                k = (t, d, 0, q)
                if k not in flat or entry[0] > flat[k][0]:
                    flat[k] = entry
            before = len(flat)
            reduced = apply_dominance1(flat)
            stats.states_merged += len(nxt) - before
            stats.states_dominated += before - len(reduced)
            if events is not None:
                for k in sorted(set(flat) - set(reduced)):
                    f, node = flat[k]
                    events.append(TraceEvent(j + 1, "dominated", k, f, lower_bound, original(chain(node))))
            nxt = reduced

        for key in sorted(nxt):
            t, d = key[0], key[1]
            f, node = nxt[key]
            if 2 * d <= t + 1 and f > best_value:
                best_value, best_node, best_extra, best_key = f, node, [], key
                if f >= lower_bound:
                    lower_bound, strict = f, False
                    if events is not None:
                        events.append(TraceEvent(j + 1, "incumbent", key, f, lower_bound, original(chain(node))))

        if j + 1 < n and (fathoming1 or fathoming2 or fathoming3):
            survivors = {}
            for key in sorted(nxt):
                f, node = nxt[key]
                kind, new_lb, extra = apply_fathoming(
                    key, f, j, lower_bound, tables, seq,
                    bound=fathoming1, infeasible=fathoming2, union=fathoming3, strict=strict,
                )
                if kind == KEEP:
                    survivors[key] = nxt[key]
                    continue
                if kind == BOUND:
                    stats.fathomed_bound += 1
                elif kind == INFEASIBLE:
                    stats.fathomed_infeasible += 1
                else:
                    stats.fathomed_improve += 1
                    if new_lb is not None:
                        lower_bound, strict = new_lb, False
                        best_value, best_node, best_extra, best_key = new_lb, node, extra, None
                if events is not None:
                    events.append(TraceEvent(j + 1, kind, key, f, lower_bound, original(chain(node))))
            nxt = survivors

        layer = nxt
        stats.peak_states = max(stats.peak_states, len(layer))
        if layers is not None:
            layers.append({k: v[0] for k, v in layer.items()})

    solution = Solution.from_items(instance, original(chain(best_node) + list(best_extra)))
    assert solution.profit == best_value and solution.is_feasible(instance)
    return SolveResult(solution, stats, trace=events, layers=layers, extra={"final_key": best_key})
