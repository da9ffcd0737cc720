"""Experiment orchestration: the three-stage robust protocol, summaries and reports.

A trial runs

1. the adversary, which fixes the deletion set from the instance alone,
2. stage one of the robust algorithm with a seed derived from
   ``(master seed, trial index)``,
3. the post-deletion rebuild,

and compares the result with the exact optimum over the surviving items.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
import random
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .adversary import AdversaryModel, make_deletion_set
from .exchange import c_alpha
from .instance import GeneratorConfig, Instance, generate_synthetic
from .matroid import build_pmatroid
from .reference import brute_force_opt
from .robust import InjectedDraws, buffer_capacity, coreset, rebuild, rexc_run, write_trace
from .submodular import build_oracle

MASK64 = (1 << 64) - 1

CSV_COLUMNS = ("trial", "seed", "eps", "alpha", "d", "adversary", "f_alg", "f_opt_after", "ratio",
               "coreset_size", "stream_queries", "rebuild_queries")


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def trial_seed(master: int, index: int) -> int:
    """Per-trial algorithm seed: splitmix64(splitmix64(master) xor index)."""
    return splitmix64(splitmix64(master & MASK64) ^ index)


def robust_floor(alpha: float, eps: float, p: int) -> float:
    """Guaranteed expected ratio (1 - (1 + 1/alpha) eps) / c_alpha(alpha, p)."""
    return (1 - (1 + 1 / alpha) * eps) / c_alpha(alpha, p)


@dataclass(frozen=True)
class TrialConfig:
    instance: Instance
    alpha: float = 1.0
    eps: float = 0.25
    d: int = 1
    adversary: AdversaryModel = AdversaryModel("top-singletons")
    seed: int = 0
    trials: int = 1
    shuffle_seed: int | None = None
    draws: tuple | None = None

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be > 0")
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.d < 0:
            raise ValueError("d must be >= 0")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    @property
    def buffer_size(self) -> int:
        return buffer_capacity(self.d, self.eps)

    def stream(self) -> list[int]:
        order = list(self.instance.ids)
        if self.shuffle_seed is not None:
            random.Random(self.shuffle_seed).shuffle(order)
        return order


@dataclass
class TrialRecord:
    trial: int
    seed: int
    eps: float
    alpha: float
    d: int
    adversary: str
    f_alg: float
    f_opt_after: float
    ratio: float
    coreset_size: int
    stream_queries: int
    rebuild_queries: int
    coreset_bound: int = 0
    weight_solution: float = 0.0
    weight_survivors: float = 0.0
    weight_swapped: float = 0.0
    elapsed: float = 0.0


@dataclass
class _Prepared:
    """Per-experiment facts that do not depend on the algorithm seed."""

    pm: object
    deletions: object
    f_opt_after: float
    rank: int


def _prepare(cfg: TrialConfig) -> _Prepared:
    pm = build_pmatroid(cfg.instance)
    oracle = build_oracle(cfg.instance)
    deletions = make_deletion_set(cfg.adversary, cfg.instance, oracle, pm, cfg.d)
    survivors = set(cfg.instance.ids) - deletions.ids
    _, f_opt = brute_force_opt(oracle.clone(), pm, survivors)
    return _Prepared(pm, deletions, f_opt, pm.rank_bound())


def run_trial(cfg: TrialConfig, trial_index: int, prepared: _Prepared | None = None,
              trace_path=None) -> TrialRecord:
    """One run of the adversary, stage one and the rebuild."""
    start = time.perf_counter()
    # the deletion set is fixed before any algorithm randomness is drawn
    prep = prepared or _prepare(cfg)
    seed = trial_seed(cfg.seed, trial_index)
    draws = InjectedDraws(cfg.draws) if cfg.draws is not None else seed

    oracle = build_oracle(cfg.instance)
    outcome = rexc_run(oracle, prep.pm, cfg.stream(), cfg.alpha, cfg.eps, cfg.d, draws)
    stream_queries = oracle.query_count()
    report = coreset(outcome, prep.pm)

    oracle.reset_queries()
    final_state = rebuild(outcome, prep.pm, oracle, prep.deletions)
    rebuild_queries = oracle.query_count()
    survivors = frozenset(final_state.solution) - prep.deletions.ids

    f_alg = oracle.clone().eval(survivors)
    f_opt = prep.f_opt_after
    ratio = 1.0 if f_opt == 0 else f_alg / f_opt
    if trace_path is not None:
        write_trace(outcome.draw_log, trace_path, extra={"trial": trial_index})
    return TrialRecord(
        trial=trial_index, seed=seed, eps=cfg.eps, alpha=cfg.alpha, d=cfg.d,
        adversary=cfg.adversary.label, f_alg=f_alg, f_opt_after=f_opt, ratio=ratio,
        coreset_size=report.size, stream_queries=stream_queries, rebuild_queries=rebuild_queries,
        coreset_bound=report.bound,
        weight_solution=final_state.weight(final_state.solution),
        weight_survivors=final_state.weight(survivors),
        weight_swapped=final_state.weight(final_state.swapped),
        elapsed=time.perf_counter() - start,
    )


@dataclass
class ExperimentSummary:
    trials: int
    mean_ratio: float
    min_ratio: float
    mean_coreset_size: float
    max_coreset_size: int
    max_stream_queries: int
    query_bound: int
    floor: float
    p: int
    records: list = field(default_factory=list)

    @property
    def meets_floor(self) -> bool:
        return self.mean_ratio >= self.floor

    def as_row(self) -> dict:
        row = dataclasses.asdict(self)
        row.pop("records")
        row["meets_floor"] = self.meets_floor
        return row


def summarize(records: Sequence[TrialRecord], cfg: TrialConfig) -> ExperimentSummary:
    ratios = [r.ratio for r in records]
    return ExperimentSummary(
        trials=len(records),
        mean_ratio=statistics.fmean(ratios),
        min_ratio=min(ratios),
        mean_coreset_size=statistics.fmean(r.coreset_size for r in records),
        max_coreset_size=max(r.coreset_size for r in records),
        max_stream_queries=max(r.stream_queries for r in records),
        query_bound=2 * cfg.instance.n * (cfg.buffer_size + 2),
        floor=robust_floor(cfg.alpha, cfg.eps, cfg.instance.p),
        p=cfg.instance.p,
        records=list(records),
    )


def run_experiment(cfg: TrialConfig, trace_dir=None) -> ExperimentSummary:
    prep = _prepare(cfg)
    if trace_dir is not None:
        Path(trace_dir).mkdir(parents=True, exist_ok=True)
    records = []
    for i in range(cfg.trials):
        trace = None if trace_dir is None else Path(trace_dir) / f"trial-{i:05d}.jsonl"
        records.append(run_trial(cfg, i, prep, trace))
    return summarize(records, cfg)


def run_sweep(cfg: TrialConfig, eps_values: Sequence[float], d_values: Sequence[int]) -> list[ExperimentSummary]:
    """Cartesian product of eps and d, everything else taken from ``cfg``."""
    return [run_experiment(dataclasses.replace(cfg, eps=e, d=d)) for e in eps_values for d in d_values]


# -- reports ----------------------------------------------------------------


def _csv_value(v):
    return repr(v) if isinstance(v, float) else str(v)


def _records_to(fh, records, fmt):
    if fmt == "csv":
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow([_csv_value(getattr(r, c)) for c in CSV_COLUMNS])
    elif fmt in ("json-lines", "jsonl", "structured"):
        for r in records:
            fh.write(json.dumps(dataclasses.asdict(r)) + "\n")
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def emit_report(records: Sequence[TrialRecord], dest, fmt: str = "csv") -> None:
    """Write records as CSV (fixed columns) or JSON lines (every field).

    ``dest`` is a path or an open text stream.
    """
    if hasattr(dest, "write"):
        _records_to(dest, records, fmt)
        return
    with open(dest, "w", newline="") as fh:
        _records_to(fh, records, fmt)


def read_report(path, fmt: str = "json-lines") -> list:
    """Inverse of :func:`emit_report`; CSV rows come back as dicts of strings."""
    text = Path(path).read_text()
    if fmt == "csv":
        return list(csv.DictReader(text.splitlines()))
    return [TrialRecord(**json.loads(line)) for line in text.splitlines() if line.strip()]


# -- presets ----------------------------------------------------------------


def _preset(kind, partition, **extra):
    gen = GeneratorConfig(kind, n=24, k=4, partition_groups=4 if partition else 0,
                          partition_capacity=2, universe=30, density=0.15, **extra)
    return generate_synthetic(gen, seed=1)


PRESETS = {
    "modular-p1": lambda: _preset("modular-uniform", False),
    "coverage-p1": lambda: _preset("coverage-random-bipartite", False),
    "facility-p1": lambda: _preset("facility-random", False),
    "modular-p2": lambda: _preset("modular-uniform", True),
    "coverage-p2": lambda: _preset("coverage-random-bipartite", True),
    "facility-p2": lambda: _preset("facility-random", True),
}


def preset_config(name: str, trials: int = 500, seed: int = 2024) -> TrialConfig:
    """n=24, uniform k=4 (and a 4-group partition for p=2), alpha=1, eps=0.25, d=3."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return TrialConfig(PRESETS[name](), alpha=1.0, eps=0.25, d=3,
                       adversary=AdversaryModel("top-singletons"), seed=seed, trials=trials)


def lemma_margin(records: Sequence[TrialRecord], alpha: float, eps: float, z: float) -> tuple[float, float]:
    """Mean and standard error of w(S2 minus D) - (1 - (1 + 1/alpha) eps) w(S2)."""
    factor = 1 - (1 + 1 / alpha) * eps
    diffs = [r.weight_survivors - factor * r.weight_solution for r in records]
    mean = statistics.fmean(diffs)
    se = statistics.stdev(diffs) / math.sqrt(len(diffs)) if len(diffs) > 1 else 0.0
    return mean, z * se
