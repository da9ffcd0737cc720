"""Deletion-robust EXC: a randomized buffer in front of the exchange algorithm.

Stage one (:func:`rexc_run`) keeps a buffer of candidates that currently
pass the exchange test. Whenever the buffer holds at least
``B = ceil(d / eps)`` items, one of them is drawn with probability
proportional to ``1 / f(v | I)`` and exchanged into the solution. The
coreset is the solution plus the buffer.

Stage two (:func:`rebuild_after_deletion`) runs plain EXC steps over the
surviving buffer items and drops deleted items from the result.

Zero-gain candidates: a buffered item whose gain is 0 can only survive the
filter when its repair set weighs 0, and its sampling weight ``1/0`` is
infinite. Such items are kept and, when present, the draw is uniform among
them (the limit of the inverse-gain law). This keeps ``d = 0`` runs
identical to EXC.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CoresetSizeError
from .exchange import ExchangeState, exc_step, exchange_candidates
from .matroid import PMatroid
from .submodular import UtilityOracle


def buffer_capacity(d: int, eps: float) -> int:
    """ceil(d / eps), computed on the decimal value of eps so 3/0.3 gives 10."""
    if d < 0:
        raise ValueError("d must be >= 0")
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return math.ceil(Fraction(d) / Fraction(str(eps)))


@dataclass
class Buffer:
    capacity: int
    entries: list = field(default_factory=list)
    cached_marginal: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, v):
        return v in self.cached_marginal or v in self.entries

    def remove(self, v: int) -> None:
        self.entries.remove(v)
        self.cached_marginal.pop(v, None)


@dataclass(frozen=True)
class DrawRecord:
    candidates: tuple
    weights: tuple
    chosen: int
    probability: float


@dataclass(frozen=True)
class DeletionSet:
    ids: frozenset
    d: int

    def __post_init__(self):
        object.__setattr__(self, "ids", frozenset(self.ids))
        if len(self.ids) > self.d:
            raise ValueError(f"{len(self.ids)} deletions exceed the budget d={self.d}")

    def __contains__(self, v):
        return v in self.ids

    def __iter__(self):
        return iter(sorted(self.ids))

    def __len__(self):
        return len(self.ids)


@dataclass
class RexcOutcome:
    state: ExchangeState
    buffer: Buffer
    draw_log: list = field(default_factory=list)
    seen: set = field(default_factory=set)

    @property
    def solution(self) -> frozenset:
        return frozenset(self.state.solution)

    def coreset_items(self) -> frozenset:
        return frozenset(self.state.solution) | frozenset(self.buffer.entries)


# -- random sources ---------------------------------------------------------


def draw_probabilities(weights: Sequence[float]) -> list[float]:
    """P(i) proportional to 1 / weights[i]; uniform over zero weights if any."""
    if any(w < 0 for w in weights):
        raise ValueError("sampling weights must be non-negative")
    zeros = [w == 0 for w in weights]
    if any(zeros):
        share = 1.0 / sum(zeros)
        return [share if z else 0.0 for z in zeros]
    inv = [1.0 / w for w in weights]
    z = sum(inv)
    return [x / z for x in inv]


class SeededDraws:
    """Inverse-CDF sampling driven by a seeded ``random.Random``."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def choose(self, candidates: Sequence[int], probabilities: Sequence[float]) -> int:
        u = self.rng.random()
        acc = 0.0
        last = None
        for v, p in zip(candidates, probabilities):
            if p <= 0:
                continue
            acc += p
            last = v
            if u < acc:
                return v
        return last


class InjectedDraws:
    """Replays a fixed sequence of chosen ids (trace tests and audit replay)."""

    def __init__(self, sequence: Iterable[int]):
        self.sequence = list(sequence)
        self._pos = 0

    def choose(self, candidates, probabilities) -> int:
        if self._pos >= len(self.sequence):
            raise RuntimeError("injected draw sequence exhausted")
        v = self.sequence[self._pos]
        self._pos += 1
        idx = list(candidates).index(v) if v in candidates else None
        if idx is None or probabilities[idx] <= 0:
            raise ValueError(f"injected draw {v} is not a possible outcome among {list(candidates)}")
        return v


def as_draw_source(source):
    if source is None:
        return SeededDraws(0)
    if isinstance(source, int):
        return SeededDraws(source)
    return source


# -- stage one --------------------------------------------------------------


def buffer_filter(state: ExchangeState, pm: PMatroid, oracle: UtilityOracle, buf: Buffer) -> Buffer:
    """Keep the entries that would currently pass the exchange test.

    Entries already in the solution are dropped. Survivors get a fresh
    cached gain and keep their insertion order.
    """
    kept, cache = [], {}
    threshold = 1 + state.alpha
    for v in buf.entries:
        gain = oracle.marginal(v, state.solution)
        if v in state.solution:
            continue
        if gain >= threshold * state.weight(exchange_candidates(state, pm, v)):
            kept.append(v)
            cache[v] = gain
    buf.entries = kept
    buf.cached_marginal = cache
    return buf


def buffer_sample(buf: Buffer, draws, log: list | None = None) -> int:
    """Draw one entry with probability proportional to 1 / cached gain."""
    if not buf.entries:
        raise ValueError("cannot sample from an empty buffer")
    candidates = tuple(buf.entries)
    weights = tuple(buf.cached_marginal[v] for v in candidates)
    probs = draw_probabilities(weights)
    v = as_draw_source(draws).choose(candidates, probs)
    if log is not None:
        log.append(DrawRecord(candidates, weights, v, probs[candidates.index(v)]))
    return v


def rexc_ingest(outcome: RexcOutcome, pm: PMatroid, oracle: UtilityOracle, v: int, draws) -> RexcOutcome:
    """Process one arrival: buffer, filter, and at most one draw."""
    if v in outcome.seen:
        raise ValueError(f"item {v} was already streamed")
    outcome.seen.add(v)
    state, buf = outcome.state, outcome.buffer
    buf.entries.append(v)
    buffer_filter(state, pm, oracle, buf)
    if buf.entries and len(buf) >= buf.capacity:
        chosen = buffer_sample(buf, draws, outcome.draw_log)
        gain = buf.cached_marginal[chosen]
        removed = exchange_candidates(state, pm, chosen)
        state.accept(chosen, gain, removed)
        buf.remove(chosen)
    return outcome


def rexc_run(oracle: UtilityOracle, pm: PMatroid, stream: Iterable[int], alpha: float,
             eps: float, d: int, seed=None) -> RexcOutcome:
    """Stage one over a whole stream.

    ``seed`` is an int for :class:`SeededDraws` or any object with a
    ``choose(candidates, probabilities)`` method.
    """
    stream = list(stream)
    if len(set(stream)) != len(stream):
        raise ValueError("stream items must be distinct")
    draws = as_draw_source(seed)
    outcome = RexcOutcome(ExchangeState(alpha), Buffer(buffer_capacity(d, eps)))
    for v in stream:
        rexc_ingest(outcome, pm, oracle, v, draws)
    return outcome


@dataclass(frozen=True)
class CoresetReport:
    items: frozenset
    size: int
    bound: int


def coreset(outcome: RexcOutcome, pm: PMatroid) -> CoresetReport:
    """Solution plus buffer, checked against k + B."""
    items = outcome.coreset_items()
    bound = pm.rank_bound() + outcome.buffer.capacity
    if len(items) > bound:
        raise CoresetSizeError(f"coreset has {len(items)} items, bound is {bound}")
    return CoresetReport(items, len(items), bound)


# -- stage two --------------------------------------------------------------


def _deleted(deletions) -> frozenset:
    if isinstance(deletions, DeletionSet):
        return deletions.ids
    return frozenset(deletions)


def rebuild(outcome: RexcOutcome, pm: PMatroid, oracle: UtilityOracle, deletions,
            alpha: float | None = None) -> ExchangeState:
    """Continue EXC over the surviving buffer; returns the pre-deletion solution state.

    The outcome itself is left untouched.
    """
    D = _deleted(deletions)
    state = outcome.state.copy()
    if alpha is not None:
        state.alpha = alpha
    for v in outcome.buffer.entries:
        if v not in D:
            exc_step(state, pm, oracle, v)
    return state


def rebuild_after_deletion(outcome: RexcOutcome, pm: PMatroid, oracle: UtilityOracle, deletions,
                           alpha: float | None = None) -> frozenset:
    """Final solution after deletions."""
    return frozenset(rebuild(outcome, pm, oracle, deletions, alpha).solution) - _deleted(deletions)


# -- audit trace ------------------------------------------------------------


def draw_to_dict(rec: DrawRecord) -> dict:
    return {"candidates": list(rec.candidates), "weights": list(rec.weights),
            "chosen": rec.chosen, "probability": rec.probability}


def write_trace(draw_log: Iterable[DrawRecord], path, extra: dict | None = None) -> None:
    """One JSON object per draw, in draw order."""
    with open(path, "w") as fh:
        for rec in draw_log:
            row = draw_to_dict(rec)
            if extra:
                row = {**extra, **row}
            fh.write(json.dumps(row) + "\n")


def read_trace(path) -> list[DrawRecord]:
    out = []
    for line in Path(path).read_text().splitlines():
        if line.strip():
            row = json.loads(line)
            out.append(DrawRecord(tuple(row["candidates"]), tuple(row["weights"]),
                                  row["chosen"], row["probability"]))
    return out


def replay(records: Iterable[DrawRecord]) -> InjectedDraws:
    return InjectedDraws(r.chosen for r in records)
