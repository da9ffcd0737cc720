"""Uniform, partition and graphic matroids and their intersection."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import GuardLimitError, UnknownItemError

RANK_GUARD = 25


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self):
        self.parent = {}
        self.size = {}

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            self.size[x] = 1
            return x
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        """Merge the sets of a and b. False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


class Matroid:
    kind = "abstract"

    def __init__(self, ground: Iterable[int]):
        self.ground = frozenset(ground)

    def _check(self, S) -> frozenset:
        S = frozenset(S)
        if not S <= self.ground:
            raise UnknownItemError(sorted(S - self.ground))
        return S

    def _independent(self, S: frozenset) -> bool:
        raise NotImplementedError

    def is_independent(self, S: Iterable[int]) -> bool:
        return self._independent(self._check(S))

    def can_extend(self, S: Iterable[int], v: int) -> bool:
        """Whether S + v is independent, for an independent S not containing v."""
        S = self._check(S)
        if v not in self.ground:
            raise UnknownItemError([v])
        if v in S:
            raise ValueError(f"item {v} is already in S")
        if not self._independent(S):
            raise ValueError("can_extend requires an independent S")
        return self._independent(S | {v})

    def rank(self) -> int:
        raise NotImplementedError


class UniformMatroid(Matroid):
    kind = "uniform"

    def __init__(self, ground, k: int):
        super().__init__(ground)
        self.k = k

    def _independent(self, S):
        return len(S) <= self.k

    def rank(self):
        return min(self.k, len(self.ground))

    def __repr__(self):
        return f"UniformMatroid(n={len(self.ground)}, k={self.k})"


class PartitionMatroid(Matroid):
    """At most ``capacities[g]`` items from each group; ungrouped items are free."""

    kind = "partition"

    def __init__(self, ground, groups: Sequence[Iterable[int]], capacities: Sequence[int]):
        super().__init__(ground)
        self.groups = tuple(frozenset(g) for g in groups)
        self.capacities = tuple(capacities)
        self.group_of = {v: g for g, members in enumerate(self.groups) for v in members}

    def _independent(self, S):
        counts = {}
        for v in S:
            g = self.group_of.get(v)
            if g is not None:
                counts[g] = counts.get(g, 0) + 1
                if counts[g] > self.capacities[g]:
                    return False
        return True

    def rank(self):
        free = len(self.ground - set(self.group_of))
        return free + sum(min(c, len(g)) for g, c in zip(self.groups, self.capacities))

    def __repr__(self):
        return f"PartitionMatroid(groups={len(self.groups)}, capacities={list(self.capacities)})"


class GraphicMatroid(Matroid):
    """Items are edges of a multigraph; independent sets are forests."""

    kind = "graphic"

    def __init__(self, ground, vertices: int, edges: Mapping[int, Sequence[int]]):
        super().__init__(ground)
        self.vertices = vertices
        self.edges = {v: tuple(e) for v, e in edges.items()}

    def _forest(self, S):
        ds = DisjointSet()
        for v in S:
            a, b = self.edges[v]
            if not ds.union(a, b):
                return None
        return ds

    def _independent(self, S):
        return self._forest(S) is not None

    def can_extend(self, S, v):
        S = self._check(S)
        if v not in self.ground:
            raise UnknownItemError([v])
        if v in S:
            raise ValueError(f"item {v} is already in S")
        ds = self._forest(S)
        if ds is None:
            raise ValueError("can_extend requires an independent S")
        a, b = self.edges[v]
        return ds.find(a) != ds.find(b)

    def rank(self):
        ds = DisjointSet()
        for v in self.ground:
            ds.union(*self.edges[v])
        components = len({ds.find(x) for x in range(self.vertices)})
        return self.vertices - components

    def __repr__(self):
        return f"GraphicMatroid(vertices={self.vertices}, edges={len(self.edges)})"


def matroid_from_spec(spec: Mapping, ground: Iterable[int]) -> Matroid:
    kind = spec["kind"]
    if kind == "uniform":
        return UniformMatroid(ground, spec["k"])
    if kind == "partition":
        return PartitionMatroid(ground, spec["groups"], spec["capacities"])
    if kind == "graphic":
        return GraphicMatroid(ground, spec["vertices"], spec["edges"])
    raise ValueError(f"unsupported matroid kind {kind!r}")


class PMatroid:
    """Intersection of p >= 1 matroids over a common ground set."""

    def __init__(self, matroids: Sequence[Matroid], guard: int = RANK_GUARD):
        if not matroids:
            raise ValueError("a p-matroid needs at least one member")
        self.matroids = tuple(matroids)
        self.ground = frozenset().union(*(m.ground for m in self.matroids))
        self.guard = guard
        self._rank = None

    @property
    def p(self) -> int:
        return len(self.matroids)

    def feasible(self, S: Iterable[int]) -> bool:
        S = frozenset(S)
        return all(m.is_independent(S) for m in self.matroids)

    def rank_bound(self) -> int:
        """Maximum size of a feasible set (exhaustive search when p > 1)."""
        if self._rank is None:
            self._rank = self._compute_rank()
        return self._rank

    def _compute_rank(self) -> int:
        if self.p == 1:
            return self.matroids[0].rank()
        if len(self.ground) > self.guard:
            raise GuardLimitError(
                f"exact rank of a {self.p}-matroid needs n <= {self.guard}, got {len(self.ground)}")
        ceiling = min(m.rank() for m in self.matroids)
        items = sorted(self.ground)
        n = len(items)
        best = 0

        def dfs(start, chosen):
            nonlocal best
            best = max(best, len(chosen))
            if best >= ceiling:
                return True
            for i in range(start, n):
                if len(chosen) + (n - i) <= best:
                    break
                cand = chosen | {items[i]}
                if self.feasible(cand) and dfs(i + 1, cand):
                    return True
            return False

        dfs(0, frozenset())
        return best

    def __repr__(self):
        return f"PMatroid({', '.join(map(repr, self.matroids))})"


def build_pmatroid(inst, guard: int = RANK_GUARD) -> PMatroid:
    return PMatroid([matroid_from_spec(m, inst.ids) for m in inst.matroids], guard=guard)
