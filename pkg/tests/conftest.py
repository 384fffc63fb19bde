import random

import pytest
from hypothesis import strategies as st

from ckp.model import Instance

FOUR_ITEMS_ROWS = [(6, 15, 1), (4, 8, 1), (2, 3, 2), (1, 1, 2)]
HEAVY_PAIR_ROWS = [(4, 100, 1), (4, 100, 1), (4, 2, 2), (1, 1, 2)]


@pytest.fixture
def four_items():
    return Instance.from_rows(2, 10, FOUR_ITEMS_ROWS)


@pytest.fixture
def heavy_pair():
    return Instance.from_rows(2, 10, HEAVY_PAIR_ROWS)


def random_instance(rng: random.Random, *, n=(1, 12), m=(1, 4), b=(1, 30), w=(1, 10), p=(-5, 20)) -> Instance:
    n_items = rng.randint(*n)
    colors = rng.randint(*m)
    return Instance.from_rows(
        colors,
        rng.randint(*b),
        [(rng.randint(*w), rng.randint(*p), rng.randint(1, colors)) for _ in range(n_items)],
    )


@st.composite
def instances(draw, max_n=8, max_m=4, max_b=30, max_w=12, profits=(-5, 20)):
    m = draw(st.integers(1, max_m))
    b = draw(st.integers(1, max_b))
    rows = draw(
        st.lists(
            st.tuples(st.integers(1, max_w), st.integers(*profits), st.integers(1, m)),
            max_size=max_n,
        )
    )
    return Instance.from_rows(m, b, rows)


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def lp_feasible(inst, x) -> bool:
    from ckp.lp import color_slack

    return (
        all(0 <= v <= 1 for v in x)
        and sum(w * v for w, v in zip(inst.weights, x)) <= inst.b
        and all(color_slack(x, inst, c) >= 0 for c in range(1, inst.m + 1))
    )


def certified_ckp_lp_value(inst, sol):
    """Exact proof that ``sol`` is optimal for the colored relaxation.

    A reduced-LP solution carries multipliers ``(u, v)``; with ``v >= 0``
    they form a dual-feasible point of the full relaxation (the color row of
    the critical color gets ``v``, every other color row 0), so equal primal
    and dual objectives prove optimality. Returns the certified value or
    None if no certificate applies.
    """
    from fractions import Fraction

    from ckp.lp import solve_kp_lp

    if not lp_feasible(inst, sol.x):
        return None
    if sol.duals is None:
        # a feasible point matching the uncolored relaxation is optimal
        return sol.value if sol.value == solve_kp_lp(inst).value else None
    u, v = sol.duals
    if u < 0 or v < 0:
        return None
    g = [1 if c == sol.tight_color else -1 for c in inst.colors]
    dual = inst.b * u + v + sum(
        (max(Fraction(0), p - u * w - v * gi) for p, w, gi in zip(inst.profits, inst.weights, g)), Fraction(0)
    )
    return sol.value if dual == sol.value else None
