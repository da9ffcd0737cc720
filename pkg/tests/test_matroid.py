import random

import pytest

from drcoreset.errors import GuardLimitError, UnknownItemError
from drcoreset.matroid import (DisjointSet, GraphicMatroid, PartitionMatroid, PMatroid, UniformMatroid,
                               matroid_from_spec)

from helpers import A, B, C, has_cycle, matroid_axiom_violations, max_feasible_size, subsets

TRIANGLE = {0: (0, 1), 1: (1, 2), 2: (0, 2)}


def test_uniform_independence():
    m = UniformMatroid(range(3), 2)
    assert m.is_independent({A, B})
    assert not m.is_independent({A, B, C})


def test_partition_independence():
    m = PartitionMatroid(range(3), [[A, B], [C]], [1, 1])
    assert m.is_independent({A, C})
    assert not m.is_independent({A, B})


def test_graphic_independence():
    m = GraphicMatroid(range(3), 3, TRIANGLE)
    assert m.is_independent({0, 1})
    assert not m.is_independent({0, 1, 2})


def test_can_extend_examples():
    assert UniformMatroid(range(3), 2).can_extend({A}, B)
    assert not PartitionMatroid(range(3), [[A, B], [C]], [1, 1]).can_extend({A}, B)
    # path 0-1-2 made of e01, e12; e02 closes the cycle
    assert not GraphicMatroid(range(3), 3, TRIANGLE).can_extend({0, 1}, 2)


def test_can_extend_contract():
    m = UniformMatroid(range(4), 1)
    with pytest.raises(ValueError):
        m.can_extend({0, 1}, 2)
    with pytest.raises(ValueError):
        m.can_extend({0}, 0)
    with pytest.raises(UnknownItemError):
        m.can_extend(set(), 9)
    with pytest.raises(UnknownItemError):
        m.is_independent({11})


def test_feasible_examples():
    assert PMatroid([UniformMatroid(range(3), 2)]).feasible({A, B})
    pm = PMatroid([UniformMatroid(range(3), 3), PartitionMatroid(range(3), [[A, B], [C]], [1, 1])])
    assert not pm.feasible({A, B})
    assert pm.feasible(set())


def test_rank_bound_examples():
    assert PMatroid([UniformMatroid(range(5), 3)]).rank_bound() == 3
    assert PMatroid([PartitionMatroid(range(3), [[A, B], [C]], [1, 1])]).rank_bound() == 2
    pm = PMatroid([UniformMatroid(range(3), 2), GraphicMatroid(range(3), 3, TRIANGLE)])
    assert pm.rank_bound() == max_feasible_size(pm, range(3)) == 2


def test_rank_guard():
    ground = range(30)
    pm = PMatroid([UniformMatroid(ground, 2), UniformMatroid(ground, 3)])
    with pytest.raises(GuardLimitError):
        pm.rank_bound()
    # p = 1 never needs the guard
    assert PMatroid([UniformMatroid(ground, 2)]).rank_bound() == 2


def test_from_spec():
    m = matroid_from_spec({"kind": "graphic", "vertices": 3, "edges": TRIANGLE}, range(3))
    assert isinstance(m, GraphicMatroid)
    with pytest.raises(ValueError):
        matroid_from_spec({"kind": "laminar"}, range(3))


def random_matroids(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    ground = range(n)
    groups = [[] for _ in range(rng.randint(1, 3))]
    for v in ground:
        if rng.random() < 0.85:
            rng.choice(groups).append(v)
    nv = rng.randint(2, 5)
    edges = {v: tuple(rng.sample(range(nv), 2)) for v in ground}
    return [
        UniformMatroid(ground, rng.randint(1, 4)),
        PartitionMatroid(ground, groups, [rng.randint(1, 2) for _ in groups]),
        GraphicMatroid(ground, nv, edges),
    ]


@pytest.mark.parametrize("seed", range(15))
def test_axioms_exhaustive(seed):
    for m in random_matroids(seed):
        assert matroid_axiom_violations(m.is_independent, m.ground) == []


@pytest.mark.parametrize("seed", range(15))
def test_can_extend_agrees_with_independence(seed):
    for m in random_matroids(seed):
        for S in subsets(m.ground):
            if not m.is_independent(S):
                continue
            for v in m.ground - S:
                assert m.can_extend(S, v) == m.is_independent(S | {v})


@pytest.mark.parametrize("seed", range(30))
def test_graphic_matches_dfs_acyclicity(seed):
    rng = random.Random(seed)
    n, nv = rng.randint(1, 9), rng.randint(2, 6)
    edges = {v: tuple(rng.sample(range(nv), 2)) for v in range(n)}
    m = GraphicMatroid(range(n), nv, edges)
    for S in subsets(range(n)):
        assert m.is_independent(S) == (not has_cycle([edges[v] for v in S]))


@pytest.mark.parametrize("seed", range(15))
def test_rank_bound_matches_enumeration(seed):
    ms = random_matroids(seed)
    for members in ([ms[0]], [ms[1]], [ms[2]], ms[:2], ms[1:], ms):
        pm = PMatroid(members)
        assert pm.rank_bound() == max_feasible_size(pm, pm.ground)


@pytest.mark.parametrize("seed", range(10))
def test_feasible_is_downward_closed(seed):
    pm = PMatroid(random_matroids(seed))
    fam = {S for S in subsets(pm.ground) if pm.feasible(S)}
    for S in fam:
        assert all(T in fam for T in subsets(S))


def test_disjoint_set():
    ds = DisjointSet()
    assert ds.union(1, 2)
    assert ds.union(2, 3)
    assert not ds.union(1, 3)
    assert ds.find(1) == ds.find(3)
    assert ds.find(9) == 9
