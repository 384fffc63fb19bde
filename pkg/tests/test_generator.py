from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckp.knapsack import is_trivial
from ckp.model import parse_instance, validate, write_instance
from ckp.toolkit.generator import NARROW_WEIGHTS, WIDE_WEIGHTS, GenConfig, generate


def test_deterministic():
    config = GenConfig(n=40, b=300, m=4, seed=99)
    assert generate(config) == generate(config)


def test_seeds_differ():
    assert generate(GenConfig(n=40, seed=1)) != generate(GenConfig(n=40, seed=2))


def test_wide_weights_scale_with_capacity():
    inst = generate(GenConfig(n=2000, b=500, m=3, weight_interval=WIDE_WEIGHTS, seed=5))
    assert all(50 <= w <= 400 for w in inst.weights)
    assert all(1 <= c <= 3 for c in inst.colors)
    assert all(0 <= p <= 100_000 for p in inst.profits)


def test_weights_never_drop_below_one():
    inst = generate(GenConfig(n=500, b=10, weight_interval=(0.001, 0.01), seed=3))
    assert min(inst.weights) == 1


def test_streams_are_independent():
    base = generate(GenConfig(n=30, m=3, seed=8))
    other = generate(GenConfig(n=30, m=3, profit_range=(-50, 50), seed=8))
    assert base.weights == other.weights and base.colors == other.colors
    assert base.profits != other.profits


def test_zipf_favours_low_colors():
    inst = generate(GenConfig(family="zipf", n=100_000, b=1000, m=7, seed=4))
    counts = Counter(inst.colors)
    assert counts[1] == max(counts.values())
    assert counts[1] > 2 * counts[7]


@pytest.mark.parametrize(
    "field,value",
    [
        ("family", "gaussian"),
        ("b", 0),
        ("m", 0),
        ("n", -1),
        ("weight_interval", (0.5, 0.2)),
        ("weight_interval", (0.0, 0.2)),
        ("profit_range", (5, 1)),
        ("zipf_exponent", 0.0),
    ],
)
def test_invalid_config(field, value):
    with pytest.raises(ValueError, match="invalid config"):
        generate(GenConfig(**{field: value}))


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(["uniform", "zipf"]),
    st.integers(0, 60),
    st.integers(1, 1000),
    st.integers(1, 15),
    st.sampled_from([WIDE_WEIGHTS, NARROW_WEIGHTS]),
    st.integers(0, 2**64 - 1),
)
def test_generated_instances_are_valid(family, n, b, m, weights, seed):
    inst = generate(GenConfig(family=family, n=n, b=b, m=m, weight_interval=weights, seed=seed))
    validate(inst)
    assert inst.n == n
    assert parse_instance(write_instance(inst)) == inst


def test_more_colors_means_more_trivial_instances():
    def removed(m):
        batch = [generate(GenConfig(n=50, b=500, m=m, weight_interval=NARROW_WEIGHTS, seed=s)) for s in range(60)]
        return sum(is_trivial(inst)[0] for inst in batch) / len(batch)

    assert removed(15) > removed(2)
