"""Monotone normalized submodular utility oracles with query accounting.

Every call to :meth:`UtilityOracle.eval` costs one query and every call to
:meth:`UtilityOracle.marginal` costs two, whatever shortcut the concrete
oracle uses internally. Oracles do not cache values between calls.
"""

from __future__ import annotations

import copy
from typing import Iterable, Mapping, Sequence

from .errors import UnknownItemError


class UtilityOracle:
    kind = "abstract"

    def __init__(self, ground: Iterable[int]):
        self.ground = frozenset(ground)
        self._queries = 0

    # subclasses implement these on validated, de-duplicated sets
    def _value(self, S: frozenset) -> float:
        raise NotImplementedError

    def _gain(self, v: int, S: frozenset) -> float:
        return self._value(S | {v}) - self._value(S)

    def _check(self, S) -> frozenset:
        S = frozenset(S)
        if not S <= self.ground:
            raise UnknownItemError(sorted(S - self.ground))
        return S

    def eval(self, S: Iterable[int]) -> float:
        """f(S)."""
        S = self._check(S)
        self._queries += 1
        return float(self._value(S))

    def marginal(self, v: int, S: Iterable[int]) -> float:
        """f(v | S) = f(S + v) - f(S)."""
        if v not in self.ground:
            raise UnknownItemError([v])
        S = self._check(S)
        self._queries += 2
        if v in S:
            return 0.0
        return float(self._gain(v, S))

    def query_count(self) -> int:
        return self._queries

    def reset_queries(self) -> None:
        self._queries = 0

    def clone(self) -> "UtilityOracle":
        """Copy sharing the (read-only) payload, with its own zeroed counter."""
        other = copy.copy(self)
        other._queries = 0
        return other

    def __repr__(self):
        return f"{type(self).__name__}(n={len(self.ground)}, queries={self._queries})"


class ModularOracle(UtilityOracle):
    kind = "modular"

    def __init__(self, values: Mapping[int, float]):
        super().__init__(values)
        self.values = dict(values)

    def _value(self, S):
        return sum(self.values[v] for v in S)

    def _gain(self, v, S):
        return self.values[v]


class CoverageOracle(UtilityOracle):
    """Weighted coverage: f(S) is the weight of the union of covered elements."""

    kind = "coverage"

    def __init__(self, universe_weights: Sequence[float], covers: Mapping[int, Iterable[int]]):
        super().__init__(covers)
        self.universe_weights = tuple(universe_weights)
        self.covers = {v: frozenset(c) for v, c in covers.items()}

    def _covered(self, S):
        out = set()
        for v in S:
            out |= self.covers[v]
        return out

    def _value(self, S):
        return sum(self.universe_weights[j] for j in self._covered(S))

    def _gain(self, v, S):
        fresh = self.covers[v] - self._covered(S)
        return sum(self.universe_weights[j] for j in fresh)


class FacilityOracle(UtilityOracle):
    """Facility location: each client is served by its best selected item."""

    kind = "facility"

    def __init__(self, clients: int, weights: Mapping[int, Sequence[float]]):
        super().__init__(weights)
        self.clients = clients
        self.weights = {v: tuple(row) for v, row in weights.items()}

    def _best(self, S):
        best = [0] * self.clients
        for v in S:
            best = [max(a, b) for a, b in zip(best, self.weights[v])]
        return best

    def _value(self, S):
        return sum(self._best(S))

    def _gain(self, v, S):
        return sum(max(0, w - b) for w, b in zip(self.weights[v], self._best(S)))


def oracle_from_spec(spec: Mapping) -> UtilityOracle:
    kind = spec["kind"]
    if kind == "modular":
        return ModularOracle(spec["values"])
    if kind == "coverage":
        return CoverageOracle(spec["universe_weights"], spec["covers"])
    if kind == "facility":
        return FacilityOracle(spec["clients"], spec["weights"])
    raise ValueError(f"unsupported function kind {kind!r}")


def build_oracle(inst) -> UtilityOracle:
    return oracle_from_spec(inst.function)
