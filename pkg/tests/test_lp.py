import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from scipy.optimize import linprog

from ckp.errors import InfeasibleReducedLP
from ckp.lp import (
    color_slack,
    find_violated_color,
    solve_ckp_lp,
    solve_kp_lp,
    solve_reduced_lp,
)
from ckp.model import Instance
from ckp.oracle import brute_force_ckp, lp_vertex_oracle
from conftest import certified_ckp_lp_value, instances, lp_feasible, random_instance


def _highs_value(inst):
    if inst.n == 0:
        return 0.0
    rows = [list(inst.weights)] + [[1 if k == c else -1 for k in inst.colors] for c in range(1, inst.m + 1)]
    rhs = [inst.b] + [1] * inst.m
    res = linprog(-np.array(inst.profits, dtype=float), A_ub=rows, b_ub=rhs, bounds=[(0, 1)] * inst.n, method="highs")
    assert res.status == 0
    return -res.fun


def test_kp_lp_four_items(four_items):
    res = solve_kp_lp(four_items)
    assert res.x == (1, 1, 0, 0) and res.value == 23 and res.split_item is None


def test_kp_lp_single_heavy_item():
    res = solve_kp_lp(Instance.from_rows(1, 3, [(4, 10, 1)]))
    assert res.x == (Fraction(3, 4),) and res.value == Fraction(30, 4) and res.split_item == 1


def test_kp_lp_nonpositive_profits():
    res = solve_kp_lp(Instance.from_rows(2, 10, [(1, 0, 1), (2, -3, 2)]))
    assert res.x == (0, 0) and res.value == 0


def test_kp_lp_ratio_ties():
    inst = Instance.from_rows(1, 3, [(1, 2, 1), (2, 4, 1), (2, 4, 1)])
    # equal ratios: larger profit first, then smaller index
    assert solve_kp_lp(inst).x == (0, 1, Fraction(1, 2))


def test_violated_color_four_items(four_items):
    assert find_violated_color(solve_kp_lp(four_items), four_items) == 1


def test_violated_color_none_for_zero():
    inst = Instance.from_rows(2, 10, [(1, -1, 1)])
    assert find_violated_color(solve_kp_lp(inst), inst) is None


def test_heavy_pair_greedy_point_is_color_feasible(heavy_pair):
    # (1, 1, 1/4, 1) gives color 1 mass 2 against 5/4 + 1
    kp = solve_kp_lp(heavy_pair)
    assert kp.x == (1, 1, Fraction(1, 4), 1) and kp.value == Fraction(403, 2)
    assert find_violated_color(kp, heavy_pair) is None


def test_reduced_lp_heavy_pair(heavy_pair):
    sol = solve_reduced_lp(heavy_pair, 1)
    assert sol.x == (1, 1, Fraction(1, 3), Fraction(2, 3))
    assert sol.value == Fraction(604, 3)
    assert sol.fractional_support == (3, 4)
    assert color_slack(sol.x, heavy_pair, 1) == 0


def test_reduced_lp_single_item():
    sol = solve_reduced_lp(Instance.from_rows(1, 10, [(4, 5, 1)]), 1)
    assert sol.x == (1,) and sol.value == 5


def test_reduced_lp_infeasible():
    with pytest.raises(InfeasibleReducedLP):
        solve_reduced_lp(Instance.from_rows(2, 3, [(4, 5, 1), (1, 1, 2)]), 1)


def test_reduced_lp_uses_negative_profit_items():
    # the equality forces a color-2 item in to balance two color-1 items
    inst = Instance.from_rows(2, 10, [(1, 10, 1), (1, 10, 1), (1, -1, 2)])
    sol = solve_reduced_lp(inst, 1)
    assert sol.value == 10 + 10 - 1 and sol.x == (1, 1, 1)


def test_ckp_lp_four_items(four_items):
    sol = solve_ckp_lp(four_items)
    assert sol.value == lp_vertex_oracle(four_items).value == Fraction(67, 3)
    assert 19 <= sol.value <= 23
    assert sol.tight_color == 1


def test_ckp_lp_passthrough_when_color_feasible():
    inst = Instance.from_rows(2, 10, [(6, 15, 1), (4, 8, 2)])
    kp = solve_kp_lp(inst)
    sol = solve_ckp_lp(inst)
    assert sol.x == kp.x and sol.value == kp.value and sol.duals is None


def test_ckp_lp_matches_vertex_oracle():
    rng = random.Random(31)
    for _ in range(200):
        inst = random_instance(rng, n=(1, 6))
        sol = solve_ckp_lp(inst)
        assert sol.value == lp_vertex_oracle(inst).value
        assert len(sol.fractional_support) <= 2


def test_ckp_lp_properties_mid_size():
    rng = random.Random(32)
    for _ in range(150):
        inst = random_instance(rng, n=(7, 12))
        sol = solve_ckp_lp(inst)
        kp = solve_kp_lp(inst)
        assert lp_feasible(inst, sol.x)
        assert len(sol.fractional_support) <= 2
        assert brute_force_ckp(inst).value <= sol.value <= kp.value
        assert certified_ckp_lp_value(inst, sol) == sol.value
        assert abs(float(sol.value) - _highs_value(inst)) < 1e-6
        violated = find_violated_color(kp, inst)
        if violated is not None:
            assert color_slack(sol.x, inst, violated) == 0


@settings(max_examples=150, deadline=None)
@given(instances(max_n=10))
def test_ckp_lp_is_exactly_feasible_and_a_vertex(inst):
    sol = solve_ckp_lp(inst)
    assert lp_feasible(inst, sol.x)
    assert len(sol.fractional_support) <= 2
    assert sol.value == sum(p * v for p, v in zip(inst.profits, sol.x))
    assert sol.value <= solve_kp_lp(inst).value
