"""Exhaustive reference solvers. Exponential by design, exact by construction."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from .errors import InstanceTooLarge
from .model import Instance, Solution

BRUTE_FORCE_LIMIT = 24
VERTEX_LIMIT = 6


@dataclass(frozen=True)
class OracleResult:
    value: int | Fraction
    witness: Solution | tuple[Fraction, ...]
    count: int


def _enumerate(instance: Instance, colored: bool) -> OracleResult:
    n = instance.n
    if n > BRUTE_FORCE_LIMIT:
        raise InstanceTooLarge(f"brute force is limited to n <= {BRUTE_FORCE_LIMIT}, got n={n}")
    w, p = instance.weights, instance.profits
    col = [c - 1 for c in instance.colors]
    counts = [0] * instance.m
    path: list[int] = []
    best = [0, ()]
    visited = 0

    def leaf(profit):
        nonlocal visited
        visited += 1
        if colored and 2 * max(counts) > len(path) + 1:
            return
        if profit > best[0] or (profit == best[0] and tuple(path) < best[1]):
            best[0], best[1] = profit, tuple(path)

    def rec(i, weight, profit):
        if i == n:
            leaf(profit)
            return
        # subsets over capacity are skipped; none of their supersets fit either
        if weight + w[i] <= instance.b:
            path.append(i + 1)
            counts[col[i]] += 1
            rec(i + 1, weight + w[i], profit + p[i])
            counts[col[i]] -= 1
            path.pop()
        rec(i + 1, weight, profit)

    rec(0, 0, 0)
    witness = Solution.from_items(instance, best[1], order=colored)
    return OracleResult(best[0], witness, visited)


def brute_force_ckp(instance: Instance) -> OracleResult:
    """Best color-feasible subset by full enumeration; ties go to the
    lexicographically smallest index tuple."""
    return _enumerate(instance, colored=True)


def brute_force_kp(instance: Instance) -> OracleResult:
    """Same enumeration with the color condition switched off."""
    return _enumerate(instance, colored=False)


def _inverse(a: list[list[Fraction]]) -> list[list[Fraction]] | None:
    k = len(a)
    m = [row[:] + [Fraction(int(r == c)) for c in range(k)] for r, row in enumerate(a)]
    for col in range(k):
        piv = next((r for r in range(col, k) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(k):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[k:] for row in m]


def lp_constraint_rows(instance: Instance) -> tuple[list[list[int]], list[int]]:
    """Structural rows ``A x <= rhs`` of the LP relaxation: capacity, then one row per color."""
    rows = [list(instance.weights)]
    rhs = [instance.b]
    for c in range(1, instance.m + 1):
        rows.append([1 if k == c else -1 for k in instance.colors])
        rhs.append(1)
    return rows, rhs


def lp_vertex_oracle(instance: Instance) -> OracleResult:
    """Optimal vertex of the LP relaxation by enumerating active sets.

    Every vertex of the relaxation is pinned down by ``n`` independent
    active constraints. Picking which variables sit at a bound (and which
    bound) leaves a free set ``F``; the point is then fixed by ``|F|``
    structural rows held at equality. All such square systems are solved in
    exact rationals and the best feasible solution wins.
    """
    n = instance.n
    if n > VERTEX_LIMIT:
        raise InstanceTooLarge(f"vertex enumeration is limited to n <= {VERTEX_LIMIT}, got n={n}")
    rows, rhs = lp_constraint_rows(instance)
    profits = instance.profits
    best_val: Fraction | None = None
    best_x: tuple[Fraction, ...] = ()
    tried = 0

    for k in range(0, min(n, len(rows)) + 1):
        for free in combinations(range(n), k):
            fixed = [i for i in range(n) if i not in free]
            for active in combinations(range(len(rows)), k):
                inv = _inverse([[Fraction(rows[r][i]) for i in free] for r in active])
                if inv is None:
                    continue
                # integer form: x_free = scaled @ residual / den
                den = math.lcm(1, *(v.denominator for row in inv for v in row))
                scaled = [[int(v * den) for v in row] for row in inv]
                for bounds in product((0, 1), repeat=len(fixed)):
                    tried += 1
                    base = [sum(row[i] * v for i, v in zip(fixed, bounds)) for row in rows]
                    resid = [rhs[r] - base[r] for r in active]
                    num = [sum(a * b for a, b in zip(srow, resid)) for srow in scaled]
                    if any(v < 0 or v > den for v in num):
                        continue
                    if any(
                        den * base[r] + sum(rows[r][i] * v for i, v in zip(free, num)) > den * rhs[r]
                        for r in range(len(rows))
                    ):
                        continue
                    x = [Fraction(0)] * n
                    for i, v in zip(fixed, bounds):
                        x[i] = Fraction(v)
                    for i, v in zip(free, num):
                        x[i] = Fraction(v, den)
                    val = sum((p * xi for p, xi in zip(profits, x)), Fraction(0))
                    if best_val is None or val > best_val:
                        best_val, best_x = val, tuple(x)
    return OracleResult(best_val, best_x, tried)
