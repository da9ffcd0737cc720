"""Independent reference checks used by the test suite.

Nothing here calls into the algorithms under test: subsets are enumerated
with itertools and acyclicity is decided by depth-first search.
"""

import itertools
import random

A, B, C, E = 0, 1, 2, 3  # the a, b, c, e items of the hand-traced scenarios


def subsets(items):
    items = sorted(items)
    for r in range(len(items) + 1):
        yield from (frozenset(s) for s in itertools.combinations(items, r))


def has_cycle(edges):
    """DFS cycle test on a multigraph given as a list of (u, v) pairs."""
    adj = {}
    for idx, (u, v) in enumerate(edges):
        if u == v:
            return True
        adj.setdefault(u, []).append((v, idx))
        adj.setdefault(v, []).append((u, idx))
    seen = set()
    for root in adj:
        if root in seen:
            continue
        stack = [(root, None)]
        while stack:
            node, via = stack.pop()
            if node in seen:
                return True
            seen.add(node)
            for nxt, idx in adj[node]:
                if idx != via:
                    stack.append((nxt, idx))
    return False


def matroid_axiom_violations(is_indep, ground):
    """Exhaustively check downward closure and augmentation."""
    fam = [S for S in subsets(ground) if is_indep(S)]
    indep = set(fam)
    bad = []
    if frozenset() not in indep:
        bad.append("empty set not independent")
    for Y in fam:
        for X in subsets(Y):
            if X not in indep:
                bad.append(f"downward closure: {sorted(Y)} -> {sorted(X)}")
    for X in fam:
        for Y in fam:
            if len(X) < len(Y) and not any((X | {v}) in indep for v in Y - X):
                bad.append(f"augmentation: {sorted(X)}, {sorted(Y)}")
    return bad


def max_feasible_size(pm, ground):
    """Largest feasible set size, growing r until no r-subset is feasible."""
    items = sorted(ground)
    best = 0
    for r in range(1, len(items) + 1):
        if not any(pm.feasible(S) for S in itertools.combinations(items, r)):
            break
        best = r
    return best


def submodularity_violations(oracle, cases, seed):
    """Random S <= T, v outside T: normalization, monotonicity, diminishing returns."""
    rng = random.Random(seed)
    ground = sorted(oracle.ground)
    bad = []
    if oracle.eval(()) != 0:
        bad.append("f(empty) != 0")
    for _ in range(cases):
        T = {v for v in ground if rng.random() < 0.5}
        S = {v for v in T if rng.random() < 0.5}
        fs, ft = oracle.eval(S), oracle.eval(T)
        if fs > ft or fs < 0:
            bad.append(f"monotonicity {sorted(S)} {sorted(T)}")
        rest = [v for v in ground if v not in T]
        if rest:
            v = rng.choice(rest)
            if oracle.marginal(v, T) > oracle.marginal(v, S):
                bad.append(f"submodularity v={v} {sorted(S)} {sorted(T)}")
    return bad
