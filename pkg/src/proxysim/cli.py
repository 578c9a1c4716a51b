"""Command-line front-end: gen, run, sweep, and estimate subcommands."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analytics import (BandwidthParams, model_report, top_c_mass,
                        top_c_mass_asymptotic, write_model_report_csv)
from .cache import POLICIES
from .popularity import build_catalog
from .simulator import (DEFAULT_ALPHAS, SimConfig, compare_analytic,
                        run_simulation, simulate_workload, sweep,
                        write_comparison_csv, write_report_csv,
                        write_summary_json)
from .workload import (DEFAULT_SESSION_SIZE, DEFAULT_SIZE_RANGE,
                       DEFAULT_TIME_RANGE, assign_attributes, generate_workload,
                       load_trace, save_trace)

ESTIMATE_MODES = ("exact", "paper", "corrected")


def _float_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return float(parts[0]), float(parts[1])


def _float_list(text: str) -> tuple[float, ...]:
    items = tuple(float(p) for p in text.split(",") if p.strip())
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return items


def _int_list(text: str) -> tuple[int, ...]:
    items = tuple(int(p) for p in text.split(",") if p.strip())
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return items


def _atomic_write(path: str, writer) -> None:
    """Write via a sibling temp file, renaming only on success."""
    tmp = f"{path}.tmp{os.getpid()}"
    try:
        writer(tmp)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _add_attribute_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sizes", type=_float_pair, default=DEFAULT_SIZE_RANGE,
                   metavar="LO,HI",
                   help="object size range in kb (default 1,15)")
    p.add_argument("--times", type=_float_pair, default=DEFAULT_TIME_RANGE,
                   metavar="LO,HI",
                   help="channel access time range in ms (default 1,10)")


def _add_bandwidth_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=float, default=1.0,
                   help="packet-loss threshold factor in [0,1] (default 1)")
    p.add_argument("--rate", choices=("product", "ratio"), default="product",
                   help="per-rank rate: size*time (kb*ms) or size/time "
                        "(kb/ms) (default product)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxysim",
        description="Trace-driven proxy cache simulation and closed-form "
                    "traffic estimation.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    gen = sub.add_parser(
        "gen", help="generate a request trace file",
        description="Draw a seeded request trace and write it to --out.")
    gen.add_argument("--objects", type=int, help="catalog size N")
    gen.add_argument("--requests", type=int, help="number of requests R")
    gen.add_argument("--alpha", type=float, help="popularity skew exponent")
    gen.add_argument("--session", type=int, default=DEFAULT_SESSION_SIZE,
                     help="requests per session (default 1000)")
    gen.add_argument("--seed", type=int, help="rng seed (required)")
    gen.add_argument("--out", help="trace file path")
    gen.add_argument("--config", help="key=value defaults file")

    run = sub.add_parser(
        "run", help="simulate one cache run",
        description="Replay a trace (or a freshly generated workload) "
                    "through a cache policy; writes report.csv and "
                    "summary.json into --out-dir.")
    run.add_argument("--trace", help="input trace file (skips generation)")
    run.add_argument("--objects", type=int, help="catalog size N")
    run.add_argument("--requests", type=int, help="number of requests R")
    run.add_argument("--alpha", type=float, help="popularity skew exponent")
    run.add_argument("--session", type=int, default=DEFAULT_SESSION_SIZE,
                     help="requests per session (default 1000)")
    run.add_argument("--capacity", type=int, help="cache capacity C")
    run.add_argument("--policy", choices=POLICIES, default="session_lfu",
                     help="replacement policy (default session_lfu)")
    run.add_argument("--seed", type=int, help="rng seed (required)")
    run.add_argument("--out-dir", help="output directory")
    run.add_argument("--compare", action="store_true",
                     help="also write comparison.csv against the analytic "
                          "model")
    _add_attribute_flags(run)
    _add_bandwidth_flags(run)
    run.add_argument("--config", help="key=value defaults file")

    swp = sub.add_parser(
        "sweep", help="run an alpha/capacity sweep",
        description="Cross-product sweep over --alphas and --capacities; "
                    "one report CSV and summary JSON per point plus a "
                    "manifest.json into --out-dir.")
    swp.add_argument("--objects", type=int, default=10000,
                     help="catalog size N (default 10000)")
    swp.add_argument("--requests", type=int, default=1000000,
                     help="number of requests R (default 1000000)")
    swp.add_argument("--alphas", type=_float_list, default=DEFAULT_ALPHAS,
                     metavar="A1,A2,...",
                     help="comma list of skew exponents "
                          "(default .98,.75,.64,.51,.41,.31)")
    swp.add_argument("--capacities", type=_int_list, default=(100,),
                     metavar="C1,C2,...",
                     help="comma list of cache capacities (default 100)")
    swp.add_argument("--session", type=int, default=DEFAULT_SESSION_SIZE,
                     help="requests per session (default 1000)")
    swp.add_argument("--policy", choices=POLICIES, default="session_lfu",
                     help="replacement policy (default session_lfu)")
    swp.add_argument("--seed", type=int, help="base rng seed (required)")
    swp.add_argument("--out-dir", help="output directory")
    _add_attribute_flags(swp)
    _add_bandwidth_flags(swp)
    swp.add_argument("--config", help="key=value defaults file")

    est = sub.add_parser(
        "estimate", help="closed-form model report, no simulation",
        description="Evaluate the analytic estimators and write the model "
                    "report CSV to --out.")
    est.add_argument("--objects", type=int, help="catalog size N")
    est.add_argument("--alpha", type=float, help="popularity skew exponent")
    est.add_argument("--capacity", type=int, help="cache capacity C")
    est.add_argument("--requests", type=int, default=1000000,
                     help="request count R for miss probabilities "
                          "(default 1000000)")
    est.add_argument("--mode", choices=ESTIMATE_MODES, default="exact",
                     help="top-C mass to report: exact partial sum or a "
                          "closed-form approximation (default exact)")
    est.add_argument("--seed", type=int, help="attribute rng seed (required)")
    est.add_argument("--out", help="model report CSV path")
    _add_attribute_flags(est)
    _add_bandwidth_flags(est)
    est.add_argument("--config", help="key=value defaults file")

    return parser


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as f:
        for lineno, line in enumerate(f.read().splitlines(), start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            if "=" not in s:
                raise ValueError(
                    f"{path}: line {lineno}: expected key=value, got {s!r}")
            key, value = s.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config_file(sub: argparse.ArgumentParser, path: str) -> None:
    """Install config-file values as subparser defaults; flags still win."""
    raw = _read_config_file(path)
    converters = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in raw.items():
        action = converters.get(key)
        if action is None:
            raise ValueError(f"{path}: unknown config key {key!r}")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = value.lower() in ("1", "true", "yes")
        elif action.type is not None:
            defaults[key] = action.type(value)
        else:
            defaults[key] = value
    sub.set_defaults(**defaults)


def _require(sub: argparse.ArgumentParser, args: argparse.Namespace,
             *names: str) -> None:
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            sub.error(f"--{name} is required (flag or config file)")


def cmd_gen(sub: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _require(sub, args, "objects", "requests", "alpha", "seed", "out")
    catalog = build_catalog(args.objects, args.alpha)
    workload = generate_workload(catalog, args.requests, args.session,
                                 args.seed)
    _atomic_write(args.out, lambda p: save_trace(workload, p))
    print(f"wrote {args.out} ({workload.total_requests} requests, "
          f"N={workload.n_objects})")
    return 0


def cmd_run(sub: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _require(sub, args, "capacity", "seed", "out-dir")
    if args.trace is None:
        _require(sub, args, "objects", "requests", "alpha")
        config = SimConfig(
            n_objects=args.objects, alpha=args.alpha,
            total_requests=args.requests, cache_capacity=args.capacity,
            seed=args.seed, session_size=args.session, policy=args.policy,
            size_range=args.sizes, time_range=args.times, k=args.k,
            rate_convention=args.rate)
        report = run_simulation(config)
        compare_config = config
    else:
        workload = load_trace(args.trace)
        attrs = assign_attributes(workload.n_objects, args.sizes, args.times,
                                  args.seed)
        echo = {
            "trace": args.trace, "n_objects": workload.n_objects,
            "total_requests": workload.total_requests,
            "session_size": workload.session_size,
            "cache_capacity": args.capacity, "policy": args.policy,
            "seed": args.seed, "size_range": list(args.sizes),
            "time_range": list(args.times), "k": args.k,
            "rate_convention": args.rate,
        }
        report = simulate_workload(workload, attrs, args.capacity,
                                   args.policy, args.k, args.rate, echo)
        compare_config = None

    comparison = None
    if args.compare:
        if compare_config is None:
            sub.error("--compare requires generation flags, not --trace")
        comparison = compare_analytic(compare_config)

    os.makedirs(args.out_dir, exist_ok=True)
    report_path = os.path.join(args.out_dir, "report.csv")
    summary_path = os.path.join(args.out_dir, "summary.json")
    _atomic_write(report_path, lambda p: write_report_csv(report, p))
    _atomic_write(summary_path, lambda p: write_summary_json(report, p))
    written = [report_path, summary_path]
    if comparison is not None:
        cmp_path = os.path.join(args.out_dir, "comparison.csv")
        _atomic_write(cmp_path, lambda p: write_comparison_csv(comparison, p))
        written.append(cmp_path)
    print(f"hit_ratio={report.hit_ratio:.6f} "
          f"miss_ratio={report.miss_ratio:.6f} "
          f"total_bandwidth={report.total_bandwidth:.6e}")
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_sweep(sub: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _require(sub, args, "seed", "out-dir")
    if not args.alphas or not args.capacities:
        sub.error("--alphas and --capacities must be non-empty")
    config = SimConfig(
        n_objects=args.objects, alpha=tuple(args.alphas),
        total_requests=args.requests, cache_capacity=tuple(args.capacities),
        seed=args.seed, session_size=args.session, policy=args.policy,
        size_range=args.sizes, time_range=args.times, k=args.k,
        rate_convention=args.rate)
    reports = sweep(config)

    os.makedirs(args.out_dir, exist_ok=True)
    manifest = {"outputs": []}
    for report in reports:
        alpha = report.config["alpha"]
        capacity = report.config["cache_capacity"]
        stem = f"a{alpha:g}_c{capacity}"
        report_path = os.path.join(args.out_dir, f"report_{stem}.csv")
        summary_path = os.path.join(args.out_dir, f"summary_{stem}.json")
        _atomic_write(report_path, lambda p, r=report: write_report_csv(r, p))
        _atomic_write(summary_path,
                      lambda p, r=report: write_summary_json(r, p))
        manifest["outputs"].append({
            "alpha": alpha, "capacity": capacity,
            "seed": report.config["seed"],
            "hit_ratio": report.hit_ratio,
            "report_csv": os.path.basename(report_path),
            "summary_json": os.path.basename(summary_path),
        })
    manifest_path = os.path.join(args.out_dir, "manifest.json")

    def _write_manifest(p: str) -> None:
        with open(p, "w") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)
            f.write("\n")

    _atomic_write(manifest_path, _write_manifest)
    print(f"wrote {len(reports)} reports and manifest.json to {args.out_dir}")
    return 0


def cmd_estimate(sub: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _require(sub, args, "objects", "alpha", "capacity", "seed", "out")
    catalog = build_catalog(args.objects, args.alpha)
    if args.capacity > catalog.n_objects:
        sub.error(f"--capacity {args.capacity} exceeds --objects "
                  f"{args.objects}")
    params = BandwidthParams(k=args.k, cache_capacity=args.capacity,
                             rate_convention=args.rate)
    if args.mode == "exact":
        mass = top_c_mass(catalog, args.capacity)
    else:
        variant = "paper_literal" if args.mode == "paper" else "corrected"
        mass = top_c_mass_asymptotic(catalog, args.capacity, variant)
    attrs = assign_attributes(args.objects, args.sizes, args.times, args.seed)
    report = model_report(catalog, attrs, params, args.requests)
    _atomic_write(args.out,
                  lambda p: write_model_report_csv(report, catalog, p))
    print(f"aggregate_bandwidth={report.aggregate_bandwidth:.6e} "
          f"top_c_mass_{args.mode}={mass:.6e}")
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "gen": cmd_gen,
    "run": cmd_run,
    "sweep": cmd_sweep,
    "estimate": cmd_estimate,
}


def main(argv=None) -> int:
    """Entry point; returns the process exit code instead of raising."""
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    subparsers = next(a for a in parser._actions
                      if isinstance(a, argparse._SubParsersAction)).choices
    command = next((a for a in argv if not a.startswith("-")), None)
    try:
        sub = subparsers.get(command) if command else None
        if sub is not None and "--config" in argv:
            index = argv.index("--config")
            if index + 1 < len(argv):
                _apply_config_file(sub, argv[index + 1])
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 2
        return _COMMANDS[args.command](sub, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (OSError, ValueError) as exc:
        prefix = f"proxysim {command}" if command else "proxysim"
        print(f"{prefix}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
