"""Exact and baseline solvers used to check the streaming algorithms."""

from __future__ import annotations

from typing import Iterable

from .errors import GuardLimitError
from .exchange import exc_run
from .matroid import PMatroid
from .submodular import UtilityOracle

BRUTE_FORCE_GUARD = 25


def brute_force_opt(oracle: UtilityOracle, pm: PMatroid, ground: Iterable[int],
                    guard: int = BRUTE_FORCE_GUARD) -> tuple[frozenset, float]:
    """Exact maximizer of f over feasible subsets of ``ground``.

    Independent sets are enumerated depth first, extending only with larger
    ids, so each set is visited once and in lexicographic order; the first
    maximum found (the lexicographically smallest) wins.
    """
    items = sorted(set(ground))
    if len(items) > guard:
        raise GuardLimitError(f"brute force limited to {guard} items, got {len(items)}")
    best_set, best_val = frozenset(), oracle.eval(())
    n = len(items)

    def dfs(start, chosen):
        nonlocal best_set, best_val
        for i in range(start, n):
            cand = chosen | {items[i]}
            if not pm.feasible(cand):
                continue
            val = oracle.eval(cand)
            if val > best_val:
                best_set, best_val = cand, val
            dfs(i + 1, cand)

    dfs(0, frozenset())
    return best_set, best_val


def greedy_order(oracle: UtilityOracle, pm: PMatroid, ground: Iterable[int]) -> list[int]:
    """Offline greedy; items in the order they were picked."""
    remaining = sorted(set(ground))
    chosen: list[int] = []
    current: set[int] = set()
    while True:
        best, best_gain = None, 0.0
        for v in remaining:
            if not pm.feasible(current | {v}):
                continue
            gain = oracle.marginal(v, current)
            if gain > best_gain:
                best, best_gain = v, gain
        if best is None:
            return chosen
        chosen.append(best)
        current.add(best)
        remaining.remove(best)


def greedy(oracle: UtilityOracle, pm: PMatroid, ground: Iterable[int]) -> frozenset:
    return frozenset(greedy_order(oracle, pm, ground))


def nonrobust_baseline(oracle: UtilityOracle, pm: PMatroid, stream: Iterable[int], alpha: float,
                       deletions: Iterable[int]) -> float:
    """Value left of the plain EXC solution after deleting ``deletions`` from it."""
    state = exc_run(oracle, pm, stream, alpha)
    return oracle.eval(frozenset(state.solution) - frozenset(deletions))
