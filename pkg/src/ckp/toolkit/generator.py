"""Seeded random instance families.

Weights, profits and colors each draw from their own child stream of one
``numpy.random.SeedSequence``, so changing how one field is sampled never
shifts the others.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..model import Instance, Item

FAMILIES = ("uniform", "zipf")
NARROW_WEIGHTS = (0.01, 0.25)
WIDE_WEIGHTS = (0.1, 0.8)


@dataclass(frozen=True)
class GenConfig:
    family: str = "uniform"
    n: int = 50
    b: int = 500
    m: int = 2
    weight_interval: tuple[float, float] = WIDE_WEIGHTS
    profit_range: tuple[int, int] = (0, 100_000)
    zipf_exponent: float = 1.0
    seed: int = 0

    def check(self) -> None:
        lo, hi = self.weight_interval
        plo, phi = self.profit_range
        problems = [
            (self.family not in FAMILIES, f"family must be one of {FAMILIES}, got {self.family!r}"),
            (self.n < 0, f"n must be non-negative, got {self.n}"),
            (self.b < 1, f"b must be positive, got {self.b}"),
            (self.m < 1, f"m must be positive, got {self.m}"),
            (not 0 < lo <= hi <= 1, f"weight interval must satisfy 0 < lo <= hi <= 1, got {self.weight_interval}"),
            (plo > phi, f"profit range is empty: {self.profit_range}"),
            (self.zipf_exponent <= 0, f"zipf exponent must be positive, got {self.zipf_exponent}"),
            (not 0 <= self.seed < 2**64, f"seed must fit in 64 bits, got {self.seed}"),
        ]
        for bad, message in problems:
            if bad:
                raise ValueError(f"invalid config: {message}")


def generate(config: GenConfig) -> Instance:
    config.check()
    weight_seq, profit_seq, color_seq = np.random.SeedSequence(config.seed).spawn(3)
    lo, hi = config.weight_interval
    u = np.random.default_rng(weight_seq).uniform(lo, hi, config.n)
    weights = np.maximum(1, np.floor(u * config.b + 0.5)).astype(np.int64)

    plo, phi = config.profit_range
    profits = np.random.default_rng(profit_seq).integers(plo, phi, size=config.n, endpoint=True)

    color_rng = np.random.default_rng(color_seq)
    if config.family == "uniform":
        colors = color_rng.integers(1, config.m, size=config.n, endpoint=True)
    else:
        mass = np.arange(1, config.m + 1, dtype=float) ** -config.zipf_exponent
        colors = color_rng.choice(config.m, size=config.n, p=mass / mass.sum()) + 1

    items = tuple(Item(int(w), int(p), int(c)) for w, p, c in zip(weights, profits, colors))
    return Instance(config.m, config.b, items)
