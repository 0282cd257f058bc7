"""Command-line entry point.

    greywolf --mode bench --algo igwo --algo gwo --func F1 --func F9 --out results/
    greywolf --mode path --gen-maps 4 --density 0.25 --out results/
    greywolf --config experiment.json --runs 5
    greywolf --catalog

Exit status: 0 on success, 2 for configuration errors, 3 for evaluation
errors, 4 for I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench
from .core import ConfigurationError, EvaluationError
from .experiments import ExperimentConfig, load_config, run_bench_experiment, run_path_experiment
from .pathplan import MapFormatError, MapGenerationError, OracleError

EXIT_CONFIG, EXIT_EVALUATION, EXIT_IO = 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="greywolf", description=__doc__.split("\n")[0])
    p.add_argument("--config", help="JSON experiment file; flags override its fields")
    p.add_argument("--mode", choices=("bench", "path"))
    p.add_argument("--algo", action="append", dest="algorithms", metavar="NAME",
                   help="igwo, gwo, pso or woa (repeatable)")
    p.add_argument("--runs", type=int)
    p.add_argument("--pop", type=int, dest="population")
    p.add_argument("--iters", type=int, dest="iterations")
    p.add_argument("--seed", type=int, dest="base_seed")
    p.add_argument("--func", action="append", dest="functions", metavar="ID",
                   help="benchmark id F1..F13 (repeatable)")
    p.add_argument("--dim", type=int, dest="dimension")
    p.add_argument("--map", action="append", dest="maps", metavar="FILE",
                   help="map file (repeatable)")
    p.add_argument("--gen-maps", type=int, dest="gen_maps")
    p.add_argument("--density", type=float)
    p.add_argument("--map-seed", type=int, dest="map_seed")
    p.add_argument("--points", type=int, help="waypoints per path including endpoints")
    p.add_argument("--penalty", type=float)
    p.add_argument("--penalty-mode", choices=("literal", "additive"), dest="penalty_mode")
    p.add_argument("--k", type=float, help="IGWO lens factor")
    p.add_argument("--no-acp", action="store_true", help="IGWO ablation: skip cooperative predation")
    p.add_argument("--no-lobl", action="store_true", help="IGWO ablation: skip lens opposition")
    p.add_argument("--out")
    p.add_argument("--catalog", action="store_true", help="print the benchmark catalog as JSON")
    return p


def make_config(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    for name in ("mode", "algorithms", "runs", "population", "iterations", "base_seed",
                 "functions", "dimension", "maps", "gen_maps", "density", "map_seed",
                 "points", "penalty", "penalty_mode", "out"):
        value = getattr(args, name)
        if value is not None:
            setattr(config, name, value)
    if config.functions:
        config.functions = [f.upper() for f in config.functions]
    igwo = dict(config.igwo)
    if args.k is not None:
        igwo["k"] = args.k
    if args.no_acp:
        igwo["use_acp"] = False
    if args.no_lobl:
        igwo["use_lobl"] = False
    config.igwo = igwo
    return config.validate()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.catalog:
            json.dump(bench.catalog(args.dimension or 30), sys.stdout, indent=2)
            sys.stdout.write("\n")
            return 0
        config = make_config(args)
        if config.mode == "bench":
            outcome = run_bench_experiment(config)
            print(open(f"{config.out}/stats.txt").read(), end="")
        else:
            outcome = run_path_experiment(config)
            print(open(f"{config.out}/path_table.txt").read(), end="")
        return 0
    except (ConfigurationError, MapFormatError, MapGenerationError, OracleError, ValueError) as exc:
        print(f"greywolf: error[config]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EvaluationError as exc:
        print(f"greywolf: error[evaluation]: {exc}", file=sys.stderr)
        return EXIT_EVALUATION
    except OSError as exc:
        print(f"greywolf: error[io]: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
