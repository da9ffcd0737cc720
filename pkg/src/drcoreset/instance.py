"""Ground-set data model, instance files, validation and synthetic generators.

An instance file is a JSON document::

    {
      "name": "toy",                                  # optional
      "items": [{"id": 0}, {"id": 1}, ...],           # order = stream order
      "function": <function spec>,
      "matroids": [<matroid spec>, ...]               # p >= 1 entries
    }

Function specs::

    {"kind": "modular",  "values": {"<id>": int, ...}}
    {"kind": "coverage", "universe_weights": [int, ...],
                         "covers": {"<id>": [universe index, ...], ...}}
    {"kind": "facility", "clients": int,
                         "weights": {"<id>": [int per client], ...}}

Matroid specs::

    {"kind": "uniform",   "k": int}
    {"kind": "partition", "groups": [[id, ...], ...], "capacities": [int, ...]}
    {"kind": "graphic",   "vertices": int, "edges": {"<id>": [u, v], ...}}

JSON object keys are strings, so ids used as keys are written as decimal
strings and parsed back to ``int``. Items that appear in no partition group
are unconstrained by that partition matroid.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import InstanceFormatError, InstanceValidationError

FUNCTION_KINDS = ("modular", "coverage", "facility")
MATROID_KINDS = ("uniform", "partition", "graphic")
GENERATOR_KINDS = ("modular-uniform", "coverage-random-bipartite", "facility-random")
MAX_GENERATED_N = 5000


@dataclass(frozen=True)
class Item:
    id: int
    payload_index: int


@dataclass(frozen=True)
class Instance:
    """An immutable ground set with its utility and constraint descriptions.

    ``function`` and ``matroids`` hold the parsed specs (id keys as ``int``).
    They must not be mutated once the instance is built.
    """

    items: tuple[Item, ...]
    function: Mapping[str, Any]
    matroids: tuple[Mapping[str, Any], ...]
    name: str = "instance"
    _ids: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_ids", tuple(it.id for it in self.items))

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def p(self) -> int:
        return len(self.matroids)

    @property
    def ids(self) -> tuple[int, ...]:
        """Item ids in default stream order."""
        return self._ids

    @classmethod
    def build(cls, ids: Iterable[int], function, matroids, name="instance") -> "Instance":
        items = tuple(Item(int(i), pos) for pos, i in enumerate(ids))
        return cls(items, function, tuple(matroids), name)

    def reordered(self, order: Iterable[int]) -> "Instance":
        """Same instance with a different stream order."""
        order = list(order)
        if sorted(order) != sorted(self.ids):
            raise ValueError("order must be a permutation of the instance ids")
        by_id = {it.id: it for it in self.items}
        return Instance(tuple(by_id[i] for i in order), self.function, self.matroids, self.name)


# -- parsing ----------------------------------------------------------------


def _int_keys(mapping, what):
    if not isinstance(mapping, Mapping):
        raise InstanceFormatError(f"{what} must be an object keyed by item id")
    out = {}
    for key, value in mapping.items():
        try:
            out[int(key)] = value
        except (TypeError, ValueError):
            raise InstanceFormatError(f"{what}: key {key!r} is not an integer item id") from None
    return out


def _require(obj, key, what):
    if not isinstance(obj, Mapping) or key not in obj:
        raise InstanceFormatError(f"{what}: missing key {key!r}")
    return obj[key]


def _parse_function(spec) -> dict:
    kind = _require(spec, "kind", "function")
    if kind == "modular":
        return {"kind": kind, "values": _int_keys(_require(spec, "values", "function"), "values")}
    if kind == "coverage":
        uw = _require(spec, "universe_weights", "function")
        if not isinstance(uw, list):
            raise InstanceFormatError("universe_weights must be a list")
        covers = _int_keys(_require(spec, "covers", "function"), "covers")
        for i, c in covers.items():
            if not isinstance(c, list):
                raise InstanceFormatError(f"covers[{i}] must be a list")
        return {"kind": kind, "universe_weights": list(uw), "covers": {i: list(c) for i, c in covers.items()}}
    if kind == "facility":
        clients = _require(spec, "clients", "function")
        weights = _int_keys(_require(spec, "weights", "function"), "weights")
        for i, row in weights.items():
            if not isinstance(row, list):
                raise InstanceFormatError(f"weights[{i}] must be a list")
        return {"kind": kind, "clients": clients, "weights": {i: list(r) for i, r in weights.items()}}
    # left for validate_instance to report
    return dict(spec)


def _parse_matroid(spec) -> dict:
    kind = _require(spec, "kind", "matroid")
    if kind == "uniform":
        return {"kind": kind, "k": _require(spec, "k", "uniform matroid")}
    if kind == "partition":
        groups = _require(spec, "groups", "partition matroid")
        caps = _require(spec, "capacities", "partition matroid")
        if not isinstance(groups, list) or not all(isinstance(g, list) for g in groups):
            raise InstanceFormatError("partition groups must be a list of id lists")
        if not isinstance(caps, list):
            raise InstanceFormatError("partition capacities must be a list")
        return {"kind": kind, "groups": [list(g) for g in groups], "capacities": list(caps)}
    if kind == "graphic":
        edges = _int_keys(_require(spec, "edges", "graphic matroid"), "edges")
        for i, e in edges.items():
            if not isinstance(e, list) or len(e) != 2:
                raise InstanceFormatError(f"edges[{i}] must be a [u, v] pair")
        return {"kind": kind, "vertices": _require(spec, "vertices", "graphic matroid"),
                "edges": {i: tuple(e) for i, e in edges.items()}}
    return dict(spec)


def parse_instance(doc: Mapping) -> Instance:
    """Build an (unvalidated) instance from a decoded JSON document."""
    if not isinstance(doc, Mapping):
        raise InstanceFormatError("instance document must be a JSON object")
    items = _require(doc, "items", "instance")
    if not isinstance(items, list):
        raise InstanceFormatError("items must be a list")
    ids = []
    for entry in items:
        raw = _require(entry, "id", "item")
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise InstanceFormatError(f"item id {raw!r} is not an integer")
        ids.append(raw)
    matroids = _require(doc, "matroids", "instance")
    if not isinstance(matroids, list):
        raise InstanceFormatError("matroids must be a list")
    function = _parse_function(_require(doc, "function", "instance"))
    return Instance.build(ids, function, [_parse_matroid(m) for m in matroids],
                          name=str(doc.get("name", "instance")))


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    inst = parse_instance(doc)
    report = validate_instance(inst)
    if report:
        raise InstanceValidationError(report)
    return inst


def load_instance(path) -> Instance:
    """Read, parse and validate an instance file."""
    return loads_instance(Path(path).read_text())


def instance_to_dict(inst: Instance) -> dict:
    fn = inst.function
    kind = fn.get("kind")
    if kind == "modular":
        function = {"kind": kind, "values": {str(i): v for i, v in fn["values"].items()}}
    elif kind == "coverage":
        function = {"kind": kind, "universe_weights": list(fn["universe_weights"]),
                    "covers": {str(i): list(c) for i, c in fn["covers"].items()}}
    elif kind == "facility":
        function = {"kind": kind, "clients": fn["clients"],
                    "weights": {str(i): list(r) for i, r in fn["weights"].items()}}
    else:
        function = dict(fn)
    matroids = []
    for m in inst.matroids:
        if m.get("kind") == "graphic":
            matroids.append({"kind": "graphic", "vertices": m["vertices"],
                             "edges": {str(i): list(e) for i, e in m["edges"].items()}})
        elif m.get("kind") == "partition":
            matroids.append({"kind": "partition", "groups": [list(g) for g in m["groups"]],
                             "capacities": list(m["capacities"])})
        else:
            matroids.append(dict(m))
    return {"name": inst.name, "items": [{"id": i} for i in inst.ids],
            "function": function, "matroids": matroids}


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=1)


def emit_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps_instance(inst) + "\n")


# -- validation -------------------------------------------------------------


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_table(report, table, ids, what):
    for i in sorted(set(table) - ids):
        report.append(f"{what}: dangling reference to item {i}")
    for i in sorted(ids - set(table)):
        report.append(f"{what}: missing entry for item {i}")


def _validate_function(fn, ids, report):
    kind = fn.get("kind")
    if kind not in FUNCTION_KINDS:
        report.append(f"function: unsupported kind {kind!r}")
        return
    if kind == "modular":
        values = fn.get("values", {})
        _check_table(report, values, ids, "modular values")
        for i, v in sorted(values.items()):
            if not _is_number(v) or v < 0:
                report.append(f"modular values: item {i} has invalid value {v!r}")
    elif kind == "coverage":
        uw = fn.get("universe_weights", [])
        for j, w in enumerate(uw):
            if not _is_number(w) or w < 0:
                report.append(f"coverage: universe element {j} has invalid weight {w!r}")
        covers = fn.get("covers", {})
        _check_table(report, covers, ids, "coverage covers")
        for i, c in sorted(covers.items()):
            for j in c:
                if not _is_int(j) or not 0 <= j < len(uw):
                    report.append(f"coverage: item {i} covers unknown universe element {j!r}")
    else:
        clients = fn.get("clients")
        if not _is_int(clients) or clients < 1:
            report.append(f"facility: non-positive client count {clients!r}")
            return
        weights = fn.get("weights", {})
        _check_table(report, weights, ids, "facility weights")
        for i, row in sorted(weights.items()):
            if len(row) != clients:
                report.append(f"facility: item {i} has {len(row)} weights, expected {clients}")
            if any(not _is_number(w) or w < 0 for w in row):
                report.append(f"facility: item {i} has an invalid weight")


def _validate_matroid(j, m, ids, report):
    kind = m.get("kind")
    tag = f"matroid {j} ({kind})"
    if kind not in MATROID_KINDS:
        report.append(f"matroid {j}: unsupported kind {kind!r}")
        return
    if kind == "uniform":
        k = m.get("k")
        if not _is_int(k) or k < 1:
            report.append(f"{tag}: non-positive capacity k={k!r}")
    elif kind == "partition":
        groups, caps = m.get("groups", []), m.get("capacities", [])
        if len(groups) != len(caps):
            report.append(f"{tag}: {len(groups)} groups but {len(caps)} capacities")
        seen = set()
        for g, members in enumerate(groups):
            for i in members:
                if not _is_int(i) or i not in ids:
                    report.append(f"{tag}: group {g} has dangling reference to item {i!r}")
                elif i in seen:
                    report.append(f"{tag}: item {i} appears in more than one group")
                seen.add(i)
        for g, c in enumerate(caps):
            if not _is_int(c) or c < 1:
                report.append(f"{tag}: group {g} has non-positive capacity {c!r}")
    else:
        nv = m.get("vertices")
        if not _is_int(nv) or nv < 1:
            report.append(f"{tag}: invalid vertex count {nv!r}")
            nv = 0
        edges = m.get("edges", {})
        _check_table(report, edges, ids, tag + " edges")
        for i, (u, v) in sorted(edges.items()):
            if not (_is_int(u) and _is_int(v) and 0 <= u < nv and 0 <= v < nv):
                report.append(f"{tag}: item {i} has an endpoint outside 0..{nv - 1}")
            elif u == v:
                report.append(f"{tag}: item {i} is a self-loop edge ({u},{u})")


def validate_instance(inst: Instance) -> list[str]:
    """Return a list of invariant violations; empty means the instance is sound."""
    report = []
    seen = set()
    for it in inst.items:
        if not _is_int(it.id) or it.id < 0:
            report.append(f"item {it.id!r}: id must be a non-negative integer")
        if it.id in seen:
            report.append(f"item {it.id}: duplicate id")
        seen.add(it.id)
    ids = set(seen)
    _validate_function(inst.function, ids, report)
    if not inst.matroids:
        report.append("matroids: at least one matroid is required (p >= 1)")
    for j, m in enumerate(inst.matroids):
        _validate_matroid(j, m, ids, report)
    return report


# -- synthetic generation ---------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters for :func:`generate_synthetic`.

    At least one of ``k`` (uniform matroid), ``partition_groups`` or
    ``graphic_vertices`` must be set; the configured matroids are
    intersected in that order.
    """

    kind: str
    n: int
    k: int | None = None
    partition_groups: int = 0
    partition_capacity: int = 1
    graphic_vertices: int = 0
    universe: int = 15
    density: float = 0.2
    clients: int = 5
    max_value: int = 10


def generate_synthetic(config: GeneratorConfig, seed: int) -> Instance:
    """Deterministic random instance for ``(config, seed)``.

    All utility weights are integers in ``[1, max_value]`` and the stream
    order is a seeded shuffle of the ids ``0..n-1``.
    """
    c = config
    if c.kind not in GENERATOR_KINDS:
        raise ValueError(f"unsupported generator kind {c.kind!r}; expected one of {GENERATOR_KINDS}")
    if not 0 <= c.n <= MAX_GENERATED_N:
        raise ValueError(f"n={c.n} outside 0..{MAX_GENERATED_N}")
    if c.max_value < 1:
        raise ValueError("max_value must be >= 1")
    if c.k is None and c.partition_groups <= 0 and c.graphic_vertices <= 0:
        raise ValueError("no matroid configured: set k, partition_groups or graphic_vertices")
    rng = random.Random(seed)
    ids = list(range(c.n))

    if c.kind == "modular-uniform":
        function = {"kind": "modular", "values": {i: rng.randint(1, c.max_value) for i in ids}}
    elif c.kind == "coverage-random-bipartite":
        if c.universe < 1:
            raise ValueError("universe must be >= 1")
        weights = [rng.randint(1, c.max_value) for _ in range(c.universe)]
        covers = {}
        for i in ids:
            cov = [j for j in range(c.universe) if rng.random() < c.density]
            covers[i] = cov or [rng.randrange(c.universe)]
        function = {"kind": "coverage", "universe_weights": weights, "covers": covers}
    else:
        if c.clients < 1:
            raise ValueError("clients must be >= 1")
        function = {"kind": "facility", "clients": c.clients,
                    "weights": {i: [rng.randint(1, c.max_value) for _ in range(c.clients)] for i in ids}}

    matroids = []
    if c.k is not None:
        if c.k < 1:
            raise ValueError("k must be >= 1")
        matroids.append({"kind": "uniform", "k": c.k})
    if c.partition_groups > 0:
        if c.partition_capacity < 1:
            raise ValueError("partition_capacity must be >= 1")
        shuffled = ids[:]
        rng.shuffle(shuffled)
        groups = [sorted(shuffled[g::c.partition_groups]) for g in range(c.partition_groups)]
        matroids.append({"kind": "partition", "groups": groups,
                         "capacities": [c.partition_capacity] * c.partition_groups})
    if c.graphic_vertices > 0:
        if c.graphic_vertices < 2:
            raise ValueError("graphic_vertices must be >= 2")
        edges = {i: tuple(rng.sample(range(c.graphic_vertices), 2)) for i in ids}
        matroids.append({"kind": "graphic", "vertices": c.graphic_vertices, "edges": edges})

    order = ids[:]
    rng.shuffle(order)
    return Instance.build(order, function, matroids, name=f"{c.kind}-n{c.n}-s{seed}")
