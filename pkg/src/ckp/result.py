"""Result records shared by the dynamic programs."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .model import Solution


@dataclass
class SolveStats:
    states_created: int = 0
    states_merged: int = 0
    states_dominated: int = 0
    fathomed_bound: int = 0
    fathomed_infeasible: int = 0
    fathomed_improve: int = 0
    peak_states: int = 0

    @property
    def states_fathomed(self) -> int:
        return self.fathomed_bound + self.fathomed_infeasible + self.fathomed_improve

    def to_dict(self) -> dict:
        return {**asdict(self), "states_fathomed": self.states_fathomed}


@dataclass(frozen=True)
class TraceEvent:
    """One notable thing that happened to a state.

    ``kind`` is one of ``bound``, ``infeasible``, ``improve`` (fathomed with
    a new incumbent), ``dominated`` or ``incumbent``. ``stage`` counts
    processed items (DP1) or colors (DP2) from 1; ``items`` holds the
    1-based original indices of the state's partial solution.
    """

    stage: int
    kind: str
    key: tuple[int, ...]
    value: int
    lower_bound: int
    items: tuple[int, ...] = ()


@dataclass
class SolveResult:
    solution: Solution
    stats: SolveStats
    trivial: bool = False
    trace: list[TraceEvent] | None = None
    layers: list[dict] | None = None
    extra: dict = field(default_factory=dict)

    @property
    def profit(self) -> int:
        return self.solution.profit

    def to_dict(self) -> dict:
        return {**self.solution.to_dict(), "trivial": self.trivial, "stats": self.stats.to_dict()}
