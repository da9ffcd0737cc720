"""Static adversaries: deletion sets built without seeing the algorithm's random bits."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import UnknownItemError
from .robust import DeletionSet
from .reference import greedy_order

KINDS = ("fixed", "random", "top-singletons", "greedy-attack")
_ALIASES = {"top": "top-singletons", "greedy": "greedy-attack"}


@dataclass(frozen=True)
class AdversaryModel:
    kind: str
    ids: tuple = ()
    seed: int = 0

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise ValueError(f"unknown adversary {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "ids", tuple(self.ids))

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "AdversaryModel":
        """``fixed:<id,id,...>``, ``random``, ``top`` or ``greedy``."""
        kind, _, rest = text.partition(":")
        if kind == "fixed":
            try:
                ids = tuple(int(x) for x in rest.split(",") if x.strip())
            except ValueError:
                raise ValueError(f"bad id list in {text!r}") from None
            return cls("fixed", ids, seed)
        if rest:
            raise ValueError(f"adversary {kind!r} takes no arguments")
        return cls(kind, (), seed)

    @property
    def label(self) -> str:
        if self.kind == "fixed":
            return "fixed:" + ",".join(map(str, self.ids))
        return self.kind


def top_singletons(oracle, ground, count: int) -> list[int]:
    """Items with the largest f({v}), ties to the smaller id."""
    scored = sorted(ground, key=lambda v: (-oracle.eval((v,)), v))
    return scored[:count]


def make_deletion_set(model: AdversaryModel, inst, oracle, pm, d: int) -> DeletionSet:
    """Build D from (model, instance, d) only.

    ``oracle`` is cloned, so deletion construction never shows up in a
    trial's query count.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    ground = sorted(inst.ids)
    if model.kind == "fixed":
        if len(model.ids) > d:
            raise ValueError(f"fixed deletion list has {len(model.ids)} ids but d={d}")
        unknown = set(model.ids) - set(ground)
        if unknown:
            raise UnknownItemError(sorted(unknown))
        return DeletionSet(frozenset(model.ids), d)
    if d > len(ground):
        raise ValueError(f"d={d} exceeds n={len(ground)}")
    oracle = oracle.clone()
    if model.kind == "random":
        return DeletionSet(frozenset(random.Random(model.seed).sample(ground, d)), d)
    if model.kind == "top-singletons":
        return DeletionSet(frozenset(top_singletons(oracle, ground, d)), d)
    picked = greedy_order(oracle, pm, ground)[:d]
    for v in top_singletons(oracle, ground, len(ground)):
        if len(picked) >= d:
            break
        if v not in picked:
            picked.append(v)
    return DeletionSet(frozenset(picked), d)
