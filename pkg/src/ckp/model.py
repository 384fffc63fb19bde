"""Problem and solution types for the colored knapsack problem.

Items are numbered from 1 in everything this module exposes; solvers are
free to work 0-based internally but must translate back before building a
:class:`Solution`.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import InstanceError

INT64_MAX = 2**63 - 1


class Item(NamedTuple):
    weight: int
    profit: int
    color: int


@dataclass(frozen=True)
class Instance:
    """A CKP instance: ``m`` colors, capacity ``b`` and a tuple of items.

    Profits may be zero or negative. The instance is validated on
    construction, so a live ``Instance`` always satisfies its invariants.
    """

    m: int
    b: int
    items: tuple[Item, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(Item(*it) for it in self.items))
        validate(self)

    @classmethod
    def from_rows(cls, m: int, b: int, rows: Iterable[Sequence[int]]) -> "Instance":
        return cls(m, b, tuple(Item(*r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.items)

    @cached_property
    def weights(self) -> tuple[int, ...]:
        return tuple(it.weight for it in self.items)

    @cached_property
    def profits(self) -> tuple[int, ...]:
        return tuple(it.profit for it in self.items)

    @cached_property
    def colors(self) -> tuple[int, ...]:
        return tuple(it.color for it in self.items)

    def items_of_color(self, color: int) -> list[int]:
        """1-based indices of the items with the given color."""
        return [i + 1 for i, c in enumerate(self.colors) if c == color]

    def relabel_colors(self, perm: Sequence[int]) -> "Instance":
        """Return a copy where color ``c`` becomes ``perm[c - 1]``."""
        if sorted(perm) != list(range(1, self.m + 1)):
            raise ValueError("perm must be a permutation of 1..m")
        return Instance(self.m, self.b, tuple(Item(w, p, perm[c - 1]) for w, p, c in self.items))


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate(instance: Instance) -> None:
    """Raise :class:`InstanceError` naming the first violated invariant."""
    if not _is_int(instance.m) or instance.m < 1:
        raise InstanceError(f"color count must be a positive integer, got {instance.m!r}")
    if not _is_int(instance.b) or instance.b < 1:
        raise InstanceError(f"non-positive capacity: {instance.b!r}")
    for idx, (w, p, c) in enumerate(instance.items, start=1):
        if not (_is_int(w) and _is_int(p) and _is_int(c)):
            raise InstanceError(f"item {idx}: fields must be integers")
        if w < 1:
            raise InstanceError(f"non-positive weight: item {idx} has weight {w}")
        if not 1 <= c <= instance.m:
            raise InstanceError(
                f"color out of range: item {idx} has color {c}, expected 1..{instance.m}"
            )


def is_color_feasible(counts: Iterable[int], total: int | None = None) -> bool:
    """True iff items with these per-color counts admit an alternating order.

    The condition is ``k_c <= (total - k_c) + 1`` for every color, i.e.
    ``2 * k_c <= total + 1``.
    """
    counts = list(counts)
    if total is None:
        total = sum(counts)
    return all(2 * k <= total + 1 for k in counts)


def color_counts(instance: Instance, selected: Iterable[int]) -> tuple[int, ...]:
    counts = [0] * instance.m
    for i in selected:
        counts[instance.items[i - 1].color - 1] += 1
    return tuple(counts)


@dataclass(frozen=True)
class Solution:
    """An item subset with cached totals; ``selected`` is sorted and 1-based."""

    selected: tuple[int, ...]
    profit: int
    weight: int
    counts: tuple[int, ...]
    ordering: tuple[int, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_items(cls, instance: Instance, items: Iterable[int], *, order: bool = True) -> "Solution":
        items = list(items)
        selected = tuple(sorted(set(items)))
        if len(selected) != len(items):
            raise ValueError("duplicate item in selection")
        for i in selected:
            if not 1 <= i <= instance.n:
                raise ValueError(f"item index {i} out of range 1..{instance.n}")
        counts = color_counts(instance, selected)
        ordering = construct_ordering(selected, instance) if order else None
        return cls(
            selected=selected,
            profit=sum(instance.items[i - 1].profit for i in selected),
            weight=sum(instance.items[i - 1].weight for i in selected),
            counts=counts,
            ordering=ordering,
        )

    @property
    def size(self) -> int:
        return len(self.selected)

    @property
    def dominant_count(self) -> int:
        return max(self.counts, default=0)

    @property
    def color_feasible(self) -> bool:
        return is_color_feasible(self.counts, self.size)

    def is_feasible(self, instance: Instance) -> bool:
        return self.weight <= instance.b and self.color_feasible

    def to_dict(self) -> dict:
        return {
            "profit": self.profit,
            "weight": self.weight,
            "items": list(self.selected),
            "ordering": list(self.ordering) if self.ordering is not None else None,
        }


def construct_ordering(selected, instance: Instance) -> tuple[int, ...] | None:
    """Arrange ``selected`` so that no two neighbours share a color.

    Greedy: always emit an item of the color with the most remaining items,
    skipping the color just emitted; ties go to the smaller color, and
    within a color items leave in increasing index order. Returns ``None``
    when the color condition is violated.
    """
    if isinstance(selected, Solution):
        selected = selected.selected
    selected = sorted(selected)
    by_color: dict[int, list[int]] = defaultdict(list)
    for i in selected:
        by_color[instance.items[i - 1].color].append(i)
    if not is_color_feasible((len(v) for v in by_color.values()), len(selected)):
        return None

    queues = {c: list(reversed(v)) for c, v in by_color.items()}
    heap = [(-len(v), c) for c, v in queues.items()]
    heapq.heapify(heap)
    out: list[int] = []
    prev = None
    while heap:
        neg, c = heapq.heappop(heap)
        if c == prev:
            # feasibility guarantees another color is waiting
            assert heap, "greedy ordering got stuck on a feasible selection"
            neg2, c2 = heapq.heappop(heap)
            heapq.heappush(heap, (neg, c))
            neg, c = neg2, c2
        out.append(queues[c].pop())
        if neg + 1 < 0:
            heapq.heappush(heap, (neg + 1, c))
        prev = c
    return tuple(out)


def has_adjacent_clash(sequence: Sequence[int], instance: Instance) -> bool:
    colors = [instance.items[i - 1].color for i in sequence]
    return any(a == b for a, b in zip(colors, colors[1:]))


# -- instance files ---------------------------------------------------------

def _parse_ints(line: str, lineno: int, expected: int) -> list[int]:
    tokens = line.split()
    if len(tokens) != expected:
        raise InstanceError(f"line {lineno}: malformed line, expected {expected} integers, got {len(tokens)}")
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise InstanceError(f"line {lineno}: malformed line, non-integer token in {line.strip()!r}") from None
    for v in values:
        if abs(v) > INT64_MAX:
            raise InstanceError(f"line {lineno}: integer overflow ({v} does not fit in 64 bits)")
    return values


def parse_instance(text: str) -> Instance:
    """Parse the ``n m b`` / ``w p color`` text format."""
    lines = [
        (no, ln)
        for no, ln in enumerate(text.splitlines(), start=1)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise InstanceError("empty instance file: missing 'n m b' header")
    no, header = lines[0]
    n, m, b = _parse_ints(header, no, 3)
    if n < 0:
        raise InstanceError(f"line {no}: negative item count {n}")
    body = lines[1:]
    if len(body) != n:
        raise InstanceError(f"inconsistent counts: header declares {n} items, found {len(body)}")
    items = [Item(*_parse_ints(ln, no, 3)) for no, ln in body]
    return Instance(m, b, tuple(items))


def write_instance(instance: Instance) -> str:
    lines = [f"{instance.n} {instance.m} {instance.b}"]
    lines.extend(f"{w} {p} {c}" for w, p, c in instance.items)
    return "\n".join(lines) + "\n"


def read_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text())


def save_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(write_instance(instance))
