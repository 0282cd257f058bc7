"""Experiment harness: repeated seeded runs, statistics and report files.

Run ``i`` of an experiment uses seed ``base_seed + i``; every algorithm sees
the same seeds, population size and iteration budget. Output files contain
no timestamps, so identical configurations give byte-identical outputs.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

import numpy as np

from . import ALGORITHMS, bench, make_optimizer
from .core import ConfigurationError, RunConfig, run
from .pathplan import (
    PathProblem,
    PenaltyConfig,
    count_obstacle_intersections,
    decode,
    generate_map,
    load_map,
    save_map,
    shortest_path_oracle,
)
from .pathplan.objective import MODES


@dataclass
class ExperimentConfig:
    mode: str = "bench"
    algorithms: list = field(default_factory=lambda: list(ALGORITHMS))
    runs: int = 30
    population: int = 40
    iterations: int = 200
    base_seed: int = 0
    functions: list = field(default_factory=lambda: [b.id for b in bench.suite()])
    dimension: int = 30
    maps: list = field(default_factory=list)
    gen_maps: int = 4
    density: float = 0.25
    map_seed: int = 0
    points: int = 20
    penalty: float = 10.0
    penalty_mode: str = "literal"
    igwo: dict = field(default_factory=dict)
    pso: dict = field(default_factory=dict)
    woa: dict = field(default_factory=dict)
    out: str = "results"

    def validate(self) -> "ExperimentConfig":
        if self.mode not in ("bench", "path"):
            raise ConfigurationError(f"mode must be 'bench' or 'path', got {self.mode!r}")
        if not self.algorithms:
            raise ConfigurationError("no algorithms selected")
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ConfigurationError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
            self.optimizer(name)
        if self.runs < 1:
            raise ConfigurationError("runs must be at least 1")
        RunConfig(self.population, self.iterations, self.base_seed)
        if self.base_seed + self.runs - 1 >= 2**64:
            raise ConfigurationError("per-run seeds overflow 64 bits")
        if self.mode == "bench":
            if not self.functions:
                raise ConfigurationError("no benchmark functions selected")
            for fid in self.functions:
                try:
                    bench.get(fid)
                except KeyError as exc:
                    raise ConfigurationError(str(exc.args[0])) from None
            if self.dimension < 2:
                raise ConfigurationError("dimension must be at least 2")
        else:
            if not self.maps and self.gen_maps < 1:
                raise ConfigurationError("path mode needs map files or gen_maps >= 1")
            if not 0.0 <= self.density < 1.0:
                raise ConfigurationError("density must lie in [0, 1)")
            if self.points < 3:
                raise ConfigurationError("points (m) must be at least 3")
            if self.penalty_mode not in MODES:
                raise ConfigurationError(f"penalty_mode must be one of {MODES}")
            if not self.penalty > 0:
                raise ConfigurationError("penalty must be positive")
        return self

    def optimizer(self, name: str):
        params = {"igwo": self.igwo, "pso": self.pso, "woa": self.woa}.get(name, {})
        try:
            return make_optimizer(name, **params)
        except TypeError as exc:
            raise ConfigurationError(f"bad parameters for {name}: {exc}") from None

    def run_config(self, i: int) -> RunConfig:
        return RunConfig(self.population, self.iterations, self.base_seed + i)

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise ConfigurationError(f"unknown config field(s): {', '.join(unknown)}")
        return cls(**doc)


def load_config(path) -> ExperimentConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{path}: top level must be an object")
    return ExperimentConfig.from_dict(doc)


@dataclass(frozen=True)
class StatRow:
    algorithm: str
    problem: str
    avg: float
    std: float
    best: float
    worst: float


def summarize(algorithm: str, problem: str, values) -> StatRow:
    """Mean, sample standard deviation (0 for a single run), min and max."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("no values to summarize")
    std = float(np.std(v, ddof=1)) if v.size > 1 else 0.0
    return StatRow(algorithm, problem, float(v.mean()), std, float(v.min()), float(v.max()))


def _fmt(x: float) -> str:
    return f"{x:.16e}" if math.isfinite(x) else repr(float(x))


STAT_FIELDS = ("algorithm", "problem", "avg", "std", "best", "worst")


def _order(rows, algorithms=ALGORITHMS):
    rank = {a: i for i, a in enumerate(algorithms)}

    def problem_key(p):
        digits = p[1:] if p[:1] in "Ff" else ""
        return (0, int(digits), p) if digits.isdigit() else (1, 0, p)

    return sorted(rows, key=lambda r: (rank.get(r.algorithm, len(rank)), r.algorithm, problem_key(r.problem)))


def write_stats_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(STAT_FIELDS)
        for r in rows:
            w.writerow([r.algorithm, r.problem, _fmt(r.avg), _fmt(r.std), _fmt(r.best), _fmt(r.worst)])


def read_stats_csv(path) -> list:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != STAT_FIELDS:
            raise ValueError(f"{path}: unexpected header {header}")
        return [StatRow(a, p, *(float(x) for x in rest)) for a, p, *rest in reader]


def format_table(rows) -> str:
    lines = [f"{'algorithm':<10} {'problem':<8} {'avg':>12} {'std':>12} {'best':>12} {'worst':>12}"]
    for r in rows:
        lines.append(
            f"{r.algorithm:<10} {r.problem:<8} {r.avg:>12.4e} {r.std:>12.4e} {r.best:>12.4e} {r.worst:>12.4e}"
        )
    return "\n".join(lines) + "\n"


def emit_report(rows, out_dir, formats=("csv", "text"), stem: str = "stats") -> list:
    """Write ``stats.csv`` and/or ``stats.txt``, ordered by algorithm then problem."""
    rows = list(rows)
    if not rows:
        raise ValueError("refusing to write an empty report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = _order(rows)
    written = []
    if "csv" in formats:
        write_stats_csv(rows, out / f"{stem}.csv")
        written.append(out / f"{stem}.csv")
    if "text" in formats:
        (out / f"{stem}.txt").write_text(format_table(rows))
        written.append(out / f"{stem}.txt")
    return written


def write_curve(curve, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("iteration", "best_so_far"))
        for t, v in enumerate(curve):
            w.writerow((t, _fmt(float(v))))


def noise_rng(seed: int) -> np.random.Generator:
    """Stream for stochastic objectives, independent of the optimizer's."""
    return np.random.default_rng([seed, 0xF7])


@dataclass
class BenchOutcome:
    rows: list
    finals: dict
    curves: dict
    run_curves: dict
    evaluations: dict


def run_bench_experiment(config: ExperimentConfig, out_dir: Optional[str] = None) -> BenchOutcome:
    config.validate()
    out = Path(out_dir if out_dir is not None else config.out)
    (out / "curves").mkdir(parents=True, exist_ok=True)
    rows, finals, curves, run_curves, evals = [], {}, {}, {}, {}
    for name in config.algorithms:
        for fid in config.functions:
            spec = bench.get(fid, config.dimension)
            values, stack, counts = [], [], []
            for i in range(config.runs):
                rc = config.run_config(i)
                result = run(config.optimizer(name), spec.objective(noise_rng(rc.seed)), rc)
                values.append(result.best_fitness)
                stack.append(result.curve)
                counts.append(result.evaluations)
            key = (name, spec.id)
            finals[key] = np.array(values)
            curves[key] = np.mean(stack, axis=0)
            run_curves[key] = np.array(stack)
            evals[key] = counts
            rows.append(summarize(name, spec.id, values))
            write_curve(curves[key], out / "curves" / f"{name}_{spec.id}.csv")
    emit_report(rows, out)
    with open(out / "evaluations.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("algorithm", "problem", "runs", "mean_evaluations"))
        for name, fid in sorted(evals, key=lambda k: (ALGORITHMS.index(k[0]), int(k[1][1:]))):
            w.writerow((name, fid, len(evals[name, fid]), _fmt(float(np.mean(evals[name, fid])))))
    return BenchOutcome(_order(rows), finals, curves, run_curves, evals)


@dataclass(frozen=True)
class PathRow:
    map: str
    algorithm: str
    best_length: float
    mean_best_length: float
    feasible_runs: int
    runs: int
    winner_collisions: int
    winner_fitness: float
    oracle_length: float
    mean_evaluations: float


PATH_FIELDS = tuple(f.name for f in fields(PathRow))


def resolve_maps(config: ExperimentConfig, out: Path) -> list:
    """``(name, GridMap)`` pairs; generated maps are also saved under ``out/maps``."""
    if config.maps:
        return [(Path(p).stem, load_map(p)) for p in config.maps]
    (out / "maps").mkdir(parents=True, exist_ok=True)
    maps = []
    for i in range(config.gen_maps):
        grid = generate_map(config.map_seed + i, density=config.density)
        name = f"map{i + 1}"
        save_map(grid, out / "maps" / f"{name}.json")
        maps.append((name, grid))
    return maps


@dataclass
class PathOutcome:
    rows: list
    run_lengths: dict
    run_curves: dict
    winners: dict
    oracle: dict


def run_path_experiment(
    config: ExperimentConfig, out_dir: Optional[str] = None, maps: Optional[list] = None
) -> PathOutcome:
    """Per map and algorithm: ``runs`` seeded runs, keep the shortest feasible path.

    A run's reported length is the shortest collision-free path it evaluated
    (``inf`` if none). The winner is the run with the shortest such path, or
    the run with the lowest objective value when no run found one.
    """
    config.validate()
    out = Path(out_dir if out_dir is not None else config.out)
    out.mkdir(parents=True, exist_ok=True)
    maps = maps if maps is not None else resolve_maps(config, out)
    penalty = PenaltyConfig(config.penalty, config.penalty_mode)
    oracle = {}
    for name, grid in maps:
        # raises before any optimization on an infeasible map
        oracle[name] = shortest_path_oracle(grid)
    (out / "paths").mkdir(exist_ok=True)
    (out / "curves").mkdir(exist_ok=True)
    rows, run_lengths, run_curves, winners = [], {}, {}, {}
    for name, grid in maps:
        for algo in config.algorithms:
            lengths, fits, positions, curves, counts = [], [], [], [], []
            for i in range(config.runs):
                problem = PathProblem(grid, config.points, penalty)
                result = run(config.optimizer(algo), problem.spec, config.run_config(i))
                lengths.append(problem.best_feasible_length)
                fits.append(result.best_fitness)
                positions.append(
                    problem.best_feasible_position
                    if problem.best_feasible_position is not None
                    else result.best_position
                )
                curves.append(result.curve)
                counts.append(result.evaluations)
            lengths = np.array(lengths)
            w = int(np.argmin(lengths)) if np.isfinite(lengths).any() else int(np.argmin(fits))
            path = decode(positions[w], grid, config.points)
            n_hits = count_obstacle_intersections(path, grid)
            winners[name, algo] = path
            run_lengths[name, algo] = lengths
            run_curves[name, algo] = np.array(curves)
            rows.append(
                PathRow(
                    map=name,
                    algorithm=algo,
                    best_length=float(lengths[w]),
                    mean_best_length=float(np.mean(lengths)),
                    feasible_runs=int(np.isfinite(lengths).sum()),
                    runs=config.runs,
                    winner_collisions=n_hits,
                    winner_fitness=float(fits[w]),
                    oracle_length=float(oracle[name]),
                    mean_evaluations=float(np.mean(counts)),
                )
            )
            with open(out / "paths" / f"{name}_{algo}.csv", "w", newline="") as fh:
                wr = csv.writer(fh, lineterminator="\n")
                wr.writerow(("x", "y"))
                for x, y in path:
                    wr.writerow((_fmt(float(x)), _fmt(float(y))))
            write_curve(np.mean(curves, axis=0), out / "curves" / f"{name}_{algo}.csv")
    write_path_table(rows, out)
    return PathOutcome(rows, run_lengths, run_curves, winners, oracle)


def write_path_table(rows, out: Path) -> None:
    with open(out / "path_table.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PATH_FIELDS)
        for r in rows:
            w.writerow(
                [
                    _fmt(v) if isinstance(v, float) else v
                    for v in (getattr(r, f) for f in PATH_FIELDS)
                ]
            )
    lines = [
        f"{'map':<8} {'algorithm':<9} {'best [m]':>10} {'mean [m]':>10} {'feasible':>9} "
        f"{'nO':>4} {'oracle [m]':>10}"
    ]
    for r in rows:
        lines.append(
            f"{r.map:<8} {r.algorithm:<9} {r.best_length:>10.3f} {r.mean_best_length:>10.3f} "
            f"{f'{r.feasible_runs}/{r.runs}':>9} {r.winner_collisions:>4} {r.oracle_length:>10.3f}"
        )
    (out / "path_table.txt").write_text("\n".join(lines) + "\n")


def config_to_dict(config: ExperimentConfig) -> dict:
    return asdict(config)
