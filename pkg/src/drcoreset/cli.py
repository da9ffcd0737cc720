"""Command line entry point: ``drcoreset run|sweep|oracle|validate|generate``."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .adversary import AdversaryModel
from .errors import CoresetError
from .harness import PRESETS, TrialConfig, emit_report, preset_config, run_experiment, run_sweep
from .instance import (GENERATOR_KINDS, GeneratorConfig, emit_instance, generate_synthetic,
                       load_instance, parse_instance, validate_instance)
from .matroid import build_pmatroid
from .reference import brute_force_opt
from .submodular import build_oracle


def _id_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _add_generator_args(p):
    g = p.add_argument_group("synthetic instance")
    g.add_argument("--gen", choices=GENERATOR_KINDS, help="generate the instance instead of reading one")
    g.add_argument("--n", type=int, default=24)
    g.add_argument("--k", type=int, default=4, help="uniform matroid rank (0 to omit)")
    g.add_argument("--groups", type=int, default=0, help="add a partition matroid with this many groups")
    g.add_argument("--group-cap", type=int, default=1)
    g.add_argument("--graphic-vertices", type=int, default=0, help="add a graphic matroid on random edges")
    g.add_argument("--universe", type=int, default=30)
    g.add_argument("--density", type=float, default=0.15)
    g.add_argument("--clients", type=int, default=5)
    g.add_argument("--max-value", type=int, default=10)
    g.add_argument("--gen-seed", type=int, default=1)


def _instance_from_args(args):
    if getattr(args, "preset", None):
        return PRESETS[args.preset]()
    if args.instance and args.gen:
        raise SystemExit("give either --instance or --gen, not both")
    if args.instance:
        return load_instance(args.instance)
    if args.gen:
        cfg = GeneratorConfig(args.gen, n=args.n, k=args.k or None, partition_groups=args.groups,
                              partition_capacity=args.group_cap, graphic_vertices=args.graphic_vertices,
                              universe=args.universe, density=args.density, clients=args.clients,
                              max_value=args.max_value)
        return generate_synthetic(cfg, args.gen_seed)
    raise SystemExit("an instance is required: --instance FILE or --gen KIND")


def _add_run_args(p):
    p.add_argument("--instance", help="instance JSON file")
    _add_generator_args(p)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--adversary", default="top", help="fixed:<ids>|random|top|greedy")
    p.add_argument("--adversary-seed", type=int, default=0)
    p.add_argument("--seed", type=int, default=0, help="master algorithm seed")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--shuffle-seed", type=int, help="shuffle the stream order with this seed")
    p.add_argument("--out", help="report destination (default: stdout)")
    p.add_argument("--format", choices=("csv", "json-lines"), default="csv")


def _config(args, instance, eps, d):
    return TrialConfig(instance, alpha=args.alpha, eps=eps, d=d,
                       adversary=AdversaryModel.parse(args.adversary, args.adversary_seed),
                       seed=args.seed, trials=args.trials, shuffle_seed=args.shuffle_seed,
                       draws=tuple(_id_list(args.draws)) if getattr(args, "draws", None) else None)


def _write(records, args):
    emit_report(records, args.out or sys.stdout, args.format)


def _print_summary(summary):
    first = summary.records[0]
    print(f"eps={first.eps} d={first.d} alpha={first.alpha} p={summary.p} trials={summary.trials}: "
          f"mean ratio {summary.mean_ratio:.4f} (min {summary.min_ratio:.4f}, floor {summary.floor:.4f}), "
          f"coreset mean {summary.mean_coreset_size:.2f} max {summary.max_coreset_size}, "
          f"max stream queries {summary.max_stream_queries} (bound {summary.query_bound})", file=sys.stderr)


def cmd_run(args):
    if args.preset:
        cfg = preset_config(args.preset, trials=args.trials, seed=args.seed)
    else:
        instance = _instance_from_args(args)
        cfg = _config(args, instance, args.eps, args.d)
    summary = run_experiment(cfg, trace_dir=args.trace_dir)
    _write(summary.records, args)
    _print_summary(summary)
    return 0


def cmd_sweep(args):
    instance = _instance_from_args(args)
    eps_values = [float(x) for x in args.eps.split(",")]
    d_values = _id_list(args.d)
    base = _config(args, instance, eps_values[0], d_values[0])
    summaries = run_sweep(base, eps_values, d_values)
    records = [r for s in summaries for r in s.records]
    _write(records, args)
    for s in summaries:
        _print_summary(s)
    return 0


def cmd_oracle(args):
    instance = _instance_from_args(args)
    deleted = set(_id_list(args.delete)) if args.delete else set()
    unknown = deleted - set(instance.ids)
    if unknown:
        raise SystemExit(f"unknown ids in --delete: {sorted(unknown)}")
    oracle, pm = build_oracle(instance), build_pmatroid(instance)
    best, value = brute_force_opt(oracle, pm, set(instance.ids) - deleted)
    print(json.dumps({"opt": sorted(best), "value": value, "deleted": sorted(deleted)}))
    return 0


def cmd_validate(args):
    try:
        with open(args.instance) as fh:
            doc = json.load(fh)
        report = validate_instance(parse_instance(doc))
    except (OSError, json.JSONDecodeError, CoresetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for line in report:
        print(line)
    if report:
        return 1
    print("ok")
    return 0


def cmd_generate(args):
    instance = _instance_from_args(args)
    emit_instance(instance, args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="drcoreset", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one robust-coreset experiment")
    _add_run_args(run)
    run.add_argument("--eps", type=float, default=0.25)
    run.add_argument("--d", type=int, default=1)
    run.add_argument("--preset", choices=sorted(PRESETS), help="use a shipped experiment preset")
    run.add_argument("--draws", help="comma-separated forced draws (trace replay / testing)")
    run.add_argument("--trace-dir", help="write each trial's draw log here")
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser("sweep", help="cartesian sweep over eps and d")
    _add_run_args(sweep)
    sweep.add_argument("--eps", default="0.25", help="comma-separated eps values")
    sweep.add_argument("--d", default="1", help="comma-separated d values")
    sweep.set_defaults(func=cmd_sweep, preset=None)

    oracle = sub.add_parser("oracle", help="exact optimum by brute force")
    oracle.add_argument("--instance")
    _add_generator_args(oracle)
    oracle.add_argument("--delete", help="comma-separated ids removed before optimizing")
    oracle.set_defaults(func=cmd_oracle, preset=None)

    validate = sub.add_parser("validate", help="check an instance file")
    validate.add_argument("instance")
    validate.set_defaults(func=cmd_validate)

    gen = sub.add_parser("generate", help="write a synthetic instance file")
    gen.add_argument("--instance", help=argparse.SUPPRESS)
    _add_generator_args(gen)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate, preset=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CoresetError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
