"""Streaming exchange algorithm (EXC) for p-matroid constraints.

Each accepted item keeps the weight it had when it was accepted,
``w(v) = f(v | I)`` with ``I`` the solution at that moment. A new item
replaces a set of cheap items when its gain is at least ``(1 + alpha)``
times their total weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import ExchangeStructureError
from .matroid import PMatroid
from .submodular import UtilityOracle


@dataclass
class ExchangeState:
    alpha: float
    solution: set = field(default_factory=set)
    weights: dict = field(default_factory=dict)
    swapped: set = field(default_factory=set)
    accept_log: list = field(default_factory=list)
    matroid_probes: int = 0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")

    def weight(self, items: Iterable[int]) -> float:
        return sum(self.weights[u] for u in items)

    def accept(self, v: int, weight: float, removed: Iterable[int]) -> None:
        """Add v with its frozen weight and move ``removed`` out of the solution."""
        if v in self.weights:
            raise ValueError(f"item {v} was already accepted once")
        removed = set(removed)
        self.solution -= removed
        self.swapped |= removed
        self.solution.add(v)
        self.weights[v] = weight
        self.accept_log.append((v, weight))

    def copy(self) -> "ExchangeState":
        return ExchangeState(self.alpha, set(self.solution), dict(self.weights), set(self.swapped),
                             list(self.accept_log), self.matroid_probes)


@dataclass(frozen=True)
class Decision:
    item: int
    gain: float
    removed: frozenset
    accepted: bool


def exchange_candidates(state: ExchangeState, pm: PMatroid, v: int) -> frozenset:
    """Items to drop so that v fits: the cheapest repair for each violated member.

    Ties between equal weights go to the smallest item id.
    """
    I = frozenset(state.solution)
    if v in I:
        raise ValueError(f"item {v} is already in the solution")
    out = set()
    for j, m in enumerate(pm.matroids):
        state.matroid_probes += 1
        if m.can_extend(I, v):
            continue
        plus_v = I | {v}
        best = None
        for u in I:
            state.matroid_probes += 1
            if m.is_independent(plus_v - {u}):
                key = (state.weights[u], u)
                if best is None or key < best:
                    best = key
        if best is None:
            raise ExchangeStructureError(
                f"matroid {j} ({m.kind}): no single removal makes room for item {v}")
        out.add(best[1])
    return frozenset(out)


def exc_step(state: ExchangeState, pm: PMatroid, oracle: UtilityOracle, v: int) -> Decision:
    if v in state.solution or v in state.swapped:
        raise ValueError(f"item {v} was already processed into the solution")
    gain = oracle.marginal(v, state.solution)
    removed = exchange_candidates(state, pm, v)
    if gain >= (1 + state.alpha) * state.weight(removed):
        state.accept(v, gain, removed)
        return Decision(v, gain, removed, True)
    return Decision(v, gain, removed, False)


def exc_run(oracle: UtilityOracle, pm: PMatroid, stream: Iterable[int], alpha: float) -> ExchangeState:
    """Run EXC over the whole stream and return the final state."""
    stream = list(stream)
    if len(set(stream)) != len(stream):
        raise ValueError("stream items must be distinct")
    state = ExchangeState(alpha)
    for v in stream:
        exc_step(state, pm, oracle, v)
    return state


def c_alpha(alpha: float, p: int) -> float:
    """Approximation constant of EXC; equals 4p at alpha = 1."""
    if not alpha > 0:
        raise ValueError("alpha must be > 0")
    return (p * (alpha + 1) - 1) * (alpha + 1) / alpha + 1 + 1 / alpha
