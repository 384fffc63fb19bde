"""LP relaxations of the colored knapsack problem, solved in exact rationals.

The pipeline is: solve the uncolored relaxation greedily; if its solution
breaks the color condition, exactly one color is to blame, and the colored
relaxation collapses to a two-constraint LP in which that color is critical.
That reduced LP is solved through its two-variable dual.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InfeasibleReducedLP
from .model import Instance

ZERO = Fraction(0)
ONE = Fraction(1)


def _support(x) -> tuple[int, ...]:
    return tuple(i + 1 for i, v in enumerate(x) if 0 < v < 1)


@dataclass(frozen=True)
class KpLpResult:
    x: tuple[Fraction, ...]
    value: Fraction
    split_item: int | None = None

    @property
    def fractional_support(self) -> tuple[int, ...]:
        return _support(self.x)


@dataclass(frozen=True)
class LpSolution:
    """A point of the colored relaxation.

    ``duals`` holds ``(capacity, color)`` multipliers when the point came out
    of the reduced LP, and is ``None`` otherwise.
    """

    x: tuple[Fraction, ...]
    value: Fraction
    tight_color: int | None = None
    duals: tuple[Fraction, Fraction] | None = None

    @property
    def fractional_support(self) -> tuple[int, ...]:
        return _support(self.x)

    def to_dict(self) -> dict:
        return {
            "value": str(self.value),
            "value_decimal": float(self.value),
            "x": [str(v) for v in self.x],
            "fractional_support": list(self.fractional_support),
            "tight_color": self.tight_color,
        }


def color_slack(x, instance: Instance, color: int) -> Fraction:
    """``1 + mass outside color - mass inside color``; negative means violated."""
    inside = sum((v for v, c in zip(x, instance.colors) if c == color), ZERO)
    total = sum(x, ZERO)
    return 1 + total - 2 * inside


def tight_colors(x, instance: Instance) -> list[int]:
    return [c for c in range(1, instance.m + 1) if color_slack(x, instance, c) == 0]


def solve_kp_lp(instance: Instance) -> KpLpResult:
    """Greedy optimum of the uncolored relaxation with at most one split item.

    Only positive-profit items are considered, by decreasing profit/weight
    ratio; equal ratios go to the larger profit, then the smaller index.
    """
    n = instance.n
    x = [ZERO] * n
    order = sorted(
        (i for i in range(n) if instance.profits[i] > 0),
        key=lambda i: (-Fraction(instance.profits[i], instance.weights[i]), -instance.profits[i], i),
    )
    room = instance.b
    split = None
    for i in order:
        if room == 0:
            break
        w = instance.weights[i]
        if w <= room:
            x[i] = ONE
            room -= w
        else:
            x[i] = Fraction(room, w)
            split = i + 1
            break
    value = sum((p * v for p, v in zip(instance.profits, x)), ZERO)
    return KpLpResult(tuple(x), value, split)


def find_violated_color(kp_lp: KpLpResult, instance: Instance) -> int | None:
    """The color whose constraint the relaxed point breaks, if any.

    A violated color holds more than half of the packed mass, so there can
    be at most one.
    """
    violated = [c for c in range(1, instance.m + 1) if color_slack(kp_lp.x, instance, c) < 0]
    assert len(violated) <= 1, f"several violated colors: {violated}"
    return violated[0] if violated else None


# -- reduced LP ---------------------------------------------------------------

def _dual_candidates(w, p, g):
    """Rational dual points ``(u, v)`` where the hinge lines of the dual meet.

    Each item contributes the line ``p_i = u w_i + v g_i``. Candidates are
    the intersections of two lines with ``u >= 0`` and of each line with the
    axis ``u = 0``, in that order and without repeats.
    """
    seen = set()
    for i in range(len(w)):
        point = (ZERO, Fraction(p[i] * g[i]))
        if point not in seen:
            seen.add(point)
            yield point
    for i, j in combinations(range(len(w)), 2):
        det = w[i] * g[j] - w[j] * g[i]
        if det == 0:
            continue
        u = Fraction(p[i] * g[j] - g[i] * p[j], det)
        if u < 0:
            continue
        point = (u, Fraction(w[i] * p[j] - w[j] * p[i], det))
        if point not in seen:
            seen.add(point)
            yield point


def _dual_value_scaled(b, w, p, g, u_num, v_num, den) -> int:
    total = b * u_num + v_num
    for wi, pi, gi in zip(w, p, g):
        r = pi * den - wi * u_num - gi * v_num
        if r > 0:
            total += r
    return total


def _fill(items, amount, w, heaviest):
    """Spread ``amount`` units over ``items`` by weight order; returns {index: share}."""
    out = {}
    left = Fraction(amount)
    for i in sorted(items, key=lambda i: (-w[i], i) if heaviest else (w[i], i)):
        if left <= 0:
            break
        share = min(ONE, left)
        out[i] = share
        left -= share
    if left > 0:
        return None
    return out


def _null_vector(rows, cols):
    """A nonzero rational ``d`` over ``cols`` with ``row . d = 0`` for each row, or None."""
    mat = [[Fraction(r[c]) for c in cols] for r in rows]
    k = len(cols)
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = next((c for c in range(k) if c not in pivots), None)
    if free is None:
        return None
    d = [ZERO] * k
    d[free] = ONE
    for row, c in enumerate(pivots):
        d[c] = -mat[row][free]
    return d


def _push_to_vertex(x, w, g, b):
    """Move along directions that keep the objective fixed until at most
    ``rank(active rows)`` coordinates remain fractional."""
    while True:
        frac = [i for i, v in enumerate(x) if 0 < v < 1]
        rows = [g]
        cap_tight = sum(wi * v for wi, v in zip(w, x)) == b
        if cap_tight:
            rows.append(w)
        d = _null_vector(rows, frac)
        if d is None:
            return x
        if sum(w[i] * di for i, di in zip(frac, d)) > 0:
            d = [-di for di in d]
        step = min(
            ((1 - x[i]) / di if di > 0 else x[i] / -di) for i, di in zip(frac, d) if di != 0
        )
        for i, di in zip(frac, d):
            x[i] += step * di
            assert 0 <= x[i] <= 1, "vertex push left the box"


def solve_reduced_lp(instance: Instance, critical_color: int) -> LpSolution:
    """Exact optimum of the relaxation with only the capacity row and the
    critical color's constraint, the latter held at equality.

    The dual ``min b u + v + sum max(0, p_i - u w_i - v g_i)`` over ``u >= 0``
    is minimized by enumerating the breakpoints of its hinge lines. The primal
    vertex is then rebuilt by complementary slackness: items with positive
    reduced cost are packed, negative ones are not, and the tied items are
    filled so that both structural constraints hold as required.
    """
    w = list(instance.weights)
    p = list(instance.profits)
    g = [1 if c == critical_color else -1 for c in instance.colors]
    b = instance.b
    if not any(wi <= b for wi, gi in zip(w, g) if gi == 1):
        raise InfeasibleReducedLP(f"color {critical_color} has no item that fits the capacity")

    best = None
    for u, v in _dual_candidates(w, p, g):
        # integer arithmetic on a common denominator keeps the scan cheap
        den = math.lcm(u.denominator, v.denominator)
        val = Fraction(_dual_value_scaled(b, w, p, g, int(u * den), int(v * den), den), den)
        if best is None or val < best[0]:
            best = (val, u, v)
    dual_value, u, v = best

    x = [ZERO] * len(w)
    tied = []
    for i in range(len(w)):
        r = p[i] - u * w[i] - v * g[i]
        if r > 0:
            x[i] = ONE
        elif r == 0:
            tied.append(i)
    need_g = 1 - sum(g[i] for i in range(len(w)) if x[i] == 1)
    room = b - sum(w[i] for i in range(len(w)) if x[i] == 1)

    plus = [i for i in tied if g[i] == 1]
    minus = [i for i in tied if g[i] == -1]
    side, other = (plus, minus) if need_g >= 0 else (minus, plus)
    light = _fill(side, abs(need_g), w, heaviest=False)
    if light is None:
        raise InfeasibleReducedLP("complementary slackness left no feasible completion")
    light_w = sum((w[i] * s for i, s in light.items()), ZERO)
    y = dict(light)
    if u > 0 and light_w < room:
        # take as much balanced extra mass as possible, heaviest first
        extra = min(len(other), len(side) - abs(need_g))
        heavy = {**_fill(side, abs(need_g) + extra, w, heaviest=True), **_fill(other, extra, w, heaviest=True)}
        heavy_w = sum((w[i] * s for i, s in heavy.items()), ZERO)
        if heavy_w < room:
            raise InfeasibleReducedLP("capacity dual is positive but capacity cannot be filled")
        lam = (room - light_w) / (heavy_w - light_w)
        y = {i: (1 - lam) * light.get(i, ZERO) + lam * heavy.get(i, ZERO) for i in set(light) | set(heavy)}
    elif light_w > room:
        raise InfeasibleReducedLP("lightest completion exceeds the capacity")
    for i, s in y.items():
        x[i] = s

    x = _push_to_vertex(x, w, g, b)
    value = sum((pi * xi for pi, xi in zip(p, x)), ZERO)
    assert value == dual_value, f"primal {value} != dual {dual_value}"
    assert sum(gi * xi for gi, xi in zip(g, x)) == 1
    assert sum(wi * xi for wi, xi in zip(w, x)) <= b
    return LpSolution(tuple(x), value, critical_color, (u, v))


def solve_ckp_lp(instance: Instance) -> LpSolution:
    """Optimum of the colored relaxation with at most two fractional items."""
    kp = solve_kp_lp(instance)
    color = find_violated_color(kp, instance)
    if color is None:
        tight = tight_colors(kp.x, instance)
        return LpSolution(kp.x, kp.value, tight[0] if tight else None)
    return solve_reduced_lp(instance, color)
