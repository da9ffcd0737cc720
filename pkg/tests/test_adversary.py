import pytest

from drcoreset.adversary import AdversaryModel, make_deletion_set
from drcoreset.errors import UnknownItemError
from drcoreset.instance import Instance
from drcoreset.matroid import build_pmatroid
from drcoreset.reference import greedy_order
from drcoreset.submodular import build_oracle

from helpers import A, B, C, E


@pytest.fixture
def s1():
    inst = Instance.build([A, B, C, E], {"kind": "modular", "values": {A: 1, B: 1, C: 3, E: 5}},
                          [{"kind": "uniform", "k": 2}])
    return inst, build_oracle(inst), build_pmatroid(inst)


def test_fixed(s1):
    inst, oracle, pm = s1
    assert make_deletion_set(AdversaryModel("fixed", (C,)), inst, oracle, pm, 1).ids == {C}


def test_top_singletons(s1):
    inst, oracle, pm = s1
    assert make_deletion_set(AdversaryModel("top-singletons"), inst, oracle, pm, 2).ids == {E, C}
    # tie between a and b resolves to the smaller id
    assert make_deletion_set(AdversaryModel("top"), inst, oracle, pm, 3).ids == {E, C, A}


def test_greedy_attack(s1):
    inst, oracle, pm = s1
    D = make_deletion_set(AdversaryModel("greedy"), inst, oracle, pm, 2)
    assert D.ids == set(greedy_order(oracle, pm, inst.ids)[:2]) == {E, C}
    # greedy stops at k=2 items, the rest is padded with top singletons
    assert make_deletion_set(AdversaryModel("greedy-attack"), inst, oracle, pm, 3).ids == {E, C, A}


def test_random_is_seeded(s1):
    inst, oracle, pm = s1
    one = make_deletion_set(AdversaryModel("random", seed=5), inst, oracle, pm, 2)
    two = make_deletion_set(AdversaryModel("random", seed=5), inst, oracle, pm, 2)
    assert one == two and len(one) == 2


def test_oracle_is_not_charged(s1):
    inst, oracle, pm = s1
    make_deletion_set(AdversaryModel("greedy"), inst, oracle, pm, 2)
    assert oracle.query_count() == 0


@pytest.mark.parametrize("model, d, exc", [
    (AdversaryModel("fixed", (A, B)), 1, ValueError),
    (AdversaryModel("fixed", (9,)), 1, UnknownItemError),
    (AdversaryModel("top"), 5, ValueError),
    (AdversaryModel("random"), -1, ValueError),
])
def test_errors(s1, model, d, exc):
    inst, oracle, pm = s1
    with pytest.raises(exc):
        make_deletion_set(model, inst, oracle, pm, d)


def test_parse():
    assert AdversaryModel.parse("fixed:1,2") == AdversaryModel("fixed", (1, 2))
    assert AdversaryModel.parse("top").kind == "top-singletons"
    assert AdversaryModel.parse("greedy", seed=3) == AdversaryModel("greedy-attack", (), 3)
    assert AdversaryModel.parse("fixed:").ids == ()
    assert AdversaryModel("fixed", (3, 1)).label == "fixed:3,1"
    for bad in ("adaptive", "fixed:a", "top:1"):
        with pytest.raises(ValueError):
            AdversaryModel.parse(bad)
