"""Command-line entry point: ``rescue-sim {sro,uav,compare,validate}``.

Exit codes: 0 success, 2 invalid scenario or arguments, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

from .errors import ConfigurationError, RescueSimError, ScenarioValidationError
from .mcs import DEFAULT_BIN_WIDTH, ResultSet, run_mcs, summarize
from .scenario import load_scenario
from .sro import SroModel
from .uas import SEARCH_METHODS, UasConfig, UasModel

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3

SEED_ENV = "RESCUE_SIM_SEED"


def _dump_json(obj, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(obj, indent=2, allow_nan=False))
        fh.write("\n")


def _write_histogram(result: ResultSet, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["bin_start_s", "bin_end_s", "count"])
        for b in result.histogram:
            w.writerow([repr(b.start), repr(b.end), b.count])


def _write_runs(outcomes, path: Path) -> None:
    keys = sorted({k for o in outcomes for k in o.metadata})
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["run_index", "target_x", "target_y", "time_s", *keys])
        for o in outcomes:
            t = repr(float(o.time)) if math.isfinite(o.time) else ""
            meta = ["" if o.metadata.get(k) is None else o.metadata[k] for k in keys]
            w.writerow([o.run_index, repr(float(o.target[0])), repr(float(o.target[1])), t, *meta])


def resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise ConfigurationError(f"{SEED_ENV}={env!r} is not an integer") from None
    return 0


def _uas_config(scenario, args) -> UasConfig:
    p = scenario.parameters
    return UasConfig(
        uav_ids=scenario.fleet(args.config),
        method=args.method,
        policy=args.policy or p.assignment_policy,
        heading_source=p.heading_source,
    )


def _summary_doc(kind: str, scenario, args, seed: int, result: ResultSet, extra: dict | None = None) -> dict:
    doc = {"mode": kind, "scenario": scenario.name, "runs": args.runs, "seed": seed}
    if extra:
        doc.update(extra)
    doc.update(result.to_dict())
    return doc


def _simulate(kind: str, scenario, args, seed: int):
    if kind == "sro":
        model = SroModel(scenario)
    else:
        model = UasModel(scenario, _uas_config(scenario, args))
    outcomes = run_mcs(model, args.runs, seed, args.parallelism)
    return outcomes, summarize(outcomes, args.bin_width)


def cmd_simulate(args, kind: str) -> int:
    seed = resolve_seed(args.seed)
    scenario = load_scenario(args.scenario)
    outcomes, result = _simulate(kind, scenario, args, seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    extra = None
    if kind == "uav":
        extra = {"method": args.method, "config": args.config}
    _dump_json(_summary_doc(kind, scenario, args, seed, result, extra), out / "summary.json")
    _write_histogram(result, out / "histogram.csv")
    if args.dump_runs:
        _write_runs(outcomes, out / "runs.csv")
    print(
        f"{kind}: {result.n_detected}/{result.n_runs} detected "
        f"(success rate {result.success_rate:.4f}), mean {_fmt(result.mean_detected)} s -> {out}"
    )
    return EXIT_OK


def cmd_compare(args) -> int:
    seed = resolve_seed(args.seed)
    scenario = load_scenario(args.scenario)
    _, sro = _simulate("sro", scenario, args, seed)
    _, uas = _simulate("uav", scenario, args, seed)
    speedup = None
    if sro.mean_detected is not None and uas.mean_detected:
        speedup = sro.mean_detected / uas.mean_detected
    doc = {
        "scenario": scenario.name,
        "runs": args.runs,
        "seed": seed,
        "method": args.method,
        "config": args.config,
        "sro": sro.to_dict(),
        "uav": uas.to_dict(),
        "speedup": speedup,
    }
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _dump_json(doc, out / "compare.json")
    print(f"compare: SRO mean {_fmt(sro.mean_detected)} s, UAS mean {_fmt(uas.mean_detected)} s, speedup {_fmt(speedup)}")
    return EXIT_OK


def cmd_validate(args) -> int:
    s = load_scenario(args.scenario)
    print(f"{args.scenario}: valid scenario {s.name!r}")
    return EXIT_OK


def _fmt(v) -> str:
    return "n/a" if v is None else f"{v:.2f}"


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rescue-sim", description="Monte-Carlo water rescue response times")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_runs: int):
        p.add_argument("--scenario", required=True, type=Path, help="scenario JSON file")
        p.add_argument("--runs", type=_positive_int, default=default_runs, help="Monte-Carlo runs")
        p.add_argument("--seed", type=_seed, default=None, help=f"master seed (default: ${SEED_ENV} or 0)")
        p.add_argument("--out", type=Path, default=Path("results"), help="output directory")
        p.add_argument("--bin-width", type=_positive_float, default=DEFAULT_BIN_WIDTH, help="histogram bin width, s")
        p.add_argument("--parallelism", type=_positive_int, default=os.cpu_count() or 1, help="worker processes")
        p.add_argument("--dump-runs", action="store_true", help="also write runs.csv")

    def uav_opts(p):
        p.add_argument("--method", choices=SEARCH_METHODS, default="parallel_sweep", help="search pattern")
        p.add_argument("--config", default=None, help="named UAS configuration (default: whole fleet)")
        p.add_argument("--policy", choices=("nearest", "all"), default=None, help="hotspot assignment policy override")

    common(sub.add_parser("sro", help="simulate standard boat rescue"), 10_000)
    p_uav = sub.add_parser("uav", help="simulate UAV search")
    common(p_uav, 100_000)
    uav_opts(p_uav)
    p_cmp = sub.add_parser("compare", help="run both modes with the same seed")
    common(p_cmp, 10_000)
    uav_opts(p_cmp)
    p_val = sub.add_parser("validate", help="check a scenario file")
    p_val.add_argument("--scenario", required=True, type=Path)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "compare":
            return cmd_compare(args)
        return cmd_simulate(args, args.command)
    except ScenarioValidationError as exc:
        for msg in exc.errors:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except (ConfigurationError, RescueSimError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
