"""Acceptance criteria, one test per criterion.

Each test appends a PASS/FAIL line to the acceptance log printed at the end
of the pytest session, then asserts. Full-scale sweeps (pop 40, T 200,
30 runs, dimension 30) are computed once per session.
"""
import filecmp
import math

import numpy as np
import pytest
from oracles import PinnedRNG, dense_sampling_hits

from greywolf import IGWO, Evaluator, ObjectiveSpec, Population, RunConfig, bench, make_optimizer, make_rng, run
from greywolf.baselines import gwo_iteration
from greywolf.experiments import ExperimentConfig, run_bench_experiment, run_path_experiment
from greywolf.igwo import (
    control_parameter,
    gwo_exploitation_step,
    lobl_reflect,
    population_centroid,
    select_leaders,
    spiral_factor,
)
from greywolf.pathplan import GridMap, decode, generate_map, path_length, path_objective, segment_obstacle_cells

ALGOS = ["igwo", "gwo", "pso", "woa"]
RANK_SET = ["F1", "F2", "F3", "F4", "F7", "F9", "F10", "F11"]
FULL = dict(runs=30, population=40, iterations=200, dimension=30)
DIAGONAL = 26.870057685088806

pytestmark = pytest.mark.slow


def check(log, name, ok, detail=""):
    log.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def identical_trees(a, b):
    cmp = filecmp.dircmp(a, b)
    if cmp.left_only or cmp.right_only:
        return False
    _, mismatch, errors = filecmp.cmpfiles(a, b, cmp.common_files, shallow=False)
    return not mismatch and not errors and all(identical_trees(a / d, b / d) for d in cmp.common_dirs)


@pytest.fixture(scope="session")
def bench_sweep(tmp_path_factory):
    cfg = ExperimentConfig(algorithms=ALGOS, functions=RANK_SET, **FULL)
    out = run_bench_experiment(cfg, tmp_path_factory.mktemp("bench"))
    return {(r.algorithm, r.problem): r for r in out.rows}, out


@pytest.fixture(scope="session")
def path_sweep(tmp_path_factory):
    cfg = ExperimentConfig(mode="path", algorithms=ALGOS, runs=30, population=40, iterations=200,
                           gen_maps=4, density=0.25)
    return run_path_experiment(cfg, tmp_path_factory.mktemp("path"))


def test_determinism(acceptance_log, tmp_path):
    bench_cfg = ExperimentConfig(algorithms=ALGOS, functions=["F1", "F7", "F10"], runs=3,
                                 population=20, iterations=30, dimension=10)
    path_cfg = ExperimentConfig(mode="path", algorithms=ALGOS, runs=2, population=20,
                                iterations=30, gen_maps=2)
    for tag in ("a", "b"):
        run_bench_experiment(bench_cfg, tmp_path / tag / "bench")
        run_path_experiment(path_cfg, tmp_path / tag / "path")
    check(acceptance_log, "determinism: byte-identical outputs on repeat",
          identical_trees(tmp_path / "a", tmp_path / "b"))


def test_unit_level_fidelity(acceptance_log):
    rel = 1e-9
    grid = GridMap()
    t = np.linspace(0, 1, 20)[1:-1]
    diag = (np.array(grid.start) + t[:, None] * (np.array(grid.goal) - np.array(grid.start))).reshape(-1)
    three = GridMap(obstacles=frozenset({(4, 4), (10, 10), (15, 15)}))
    one = GridMap(obstacles=frozenset({(10, 10)}))
    sym = ObjectiveSpec(1, -100, 100, lambda x: 0.0)
    box = ObjectiveSpec(3, [-5, 0, 2], [5, 8, 3], lambda x: 0.0)
    cases = {
        "control_parameter(0, 200)": (control_parameter(0, 200), 2.0),
        "control_parameter(100, 200)": (control_parameter(100, 200), 1.0),
        "control_parameter(199, 200)": (control_parameter(199, 200), 0.01),
        "spiral_factor(0.5, t, T)": (spiral_factor(0.5, 37, 200), 0.0),
        # math module evaluation of 2 * exp(0.25 ** (1/200)) * sin(pi/2)
        "spiral_factor(0.25, 199, 200)": (spiral_factor(0.25, 199, 200), 2 * math.exp(0.25 ** (1 / 200))),
        "lobl_reflect k=1": (lobl_reflect(np.array([3.0, 1.0, 2.5]), box, 1.0), [-3.0, 7.0, 2.5]),
        "lobl_reflect midpoint": (lobl_reflect(np.array([0.0, 4.0, 2.5]), box, 123.0), [0.0, 4.0, 2.5]),
        "lobl_reflect k=1e4": (lobl_reflect(np.array([50.0]), sym, 1e4), [-0.005]),
        "population_centroid two points": (population_centroid(np.array([[0, 0], [2, 2]])), [1, 1]),
        "population_centroid single": (population_centroid(np.array([[3.5, -2.0]])), [3.5, -2.0]),
        "population_centroid symmetric": (population_centroid(np.array([[1, 0], [0, 1], [-1, 0], [0, -1]])), [0, 0]),
        "path_length diagonal": (path_length(decode(diag, grid, 20)), DIAGONAL),
        "path_length coincident": (path_length(np.full((5, 2), 7.0)), 0.0),
        "path_length unit square": (path_length([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]), 4.0),
        "path_objective feasible diagonal": (path_objective(diag, grid), DIAGONAL),
    }
    exact = {
        "path_objective nO=3, P=10": (path_objective(np.array([7.0, 7.0]), three, m=3), 30.0),
        "path_objective nO=1, P=10": (path_objective(np.array([10.5, 11.5]), one, m=3), 10.0),
    }
    bad = [k for k, (got, want) in cases.items() if not np.allclose(got, want, rtol=rel, atol=1e-15)]
    bad += [k for k, (got, want) in exact.items() if got != want]
    check(acceptance_log, "unit-level fidelity (1e-9 relative, exact for penalty cases)",
          not bad, ", ".join(bad) or f"{len(cases) + len(exact)} values")


def test_f1_sphere(acceptance_log, bench_sweep):
    avg = bench_sweep[0]["igwo", "F1"].avg
    check(acceptance_log, "F1 IGWO mean <= 1e-40", avg <= 1e-40, f"mean {avg:.3e}")


@pytest.mark.parametrize("fid", ["F9", "F11"])
def test_f9_f11(acceptance_log, bench_sweep, fid):
    avg = bench_sweep[0]["igwo", fid].avg
    check(acceptance_log, f"{fid} IGWO mean <= 1e-10", avg <= 1e-10, f"mean {avg:.3e}")


def test_f10_ackley(acceptance_log, bench_sweep):
    avg = bench_sweep[0]["igwo", "F10"].avg
    check(acceptance_log, "F10 IGWO mean <= 1e-5", avg <= 1e-5, f"mean {avg:.3e}")


def test_rank_claim(acceptance_log, bench_sweep):
    rows = bench_sweep[0]
    wins = [f for f in RANK_SET if all(rows["igwo", f].avg <= rows[o, f].avg for o in ("gwo", "pso", "woa"))]
    check(acceptance_log, "rank claim: IGWO mean <= every baseline on >= 7 of 8",
          len(wins) >= 7, f"{len(wins)}/8: " + ",".join(wins))


def test_path_winners_feasible(acceptance_log, path_sweep):
    bad = [f"{r.map}/{r.algorithm} nO={r.winner_collisions}" for r in path_sweep.rows if r.winner_collisions != 0]
    check(acceptance_log, "path: every reported winner has nO = 0", not bad,
          "; ".join(bad) or "all 16 winners collision-free")


def test_path_igwo_above_oracle(acceptance_log, path_sweep):
    igwo = [r for r in path_sweep.rows if r.algorithm == "igwo"]
    # an infeasible result (no collision-free path, length inf) cannot witness the bound
    ok = all(math.isfinite(r.best_length) and r.best_length >= r.oracle_length for r in igwo)
    check(acceptance_log, "path: IGWO best >= visibility-graph oracle on every map", ok,
          ", ".join(f"{r.map} {r.best_length:.3f}>={r.oracle_length:.3f}" for r in igwo))


def test_path_igwo_near_oracle(acceptance_log, path_sweep):
    igwo = [r for r in path_sweep.rows if r.algorithm == "igwo"]
    ratios = [r.best_length / r.oracle_length for r in igwo]
    check(acceptance_log, "path: IGWO best <= 1.10 x oracle on every map", all(q <= 1.10 for q in ratios),
          ", ".join(f"{r.map} {q:.3f}" for r, q in zip(igwo, ratios)))


def test_path_igwo_mean_beats_baselines(acceptance_log, path_sweep):
    by = {(r.map, r.algorithm): r.mean_best_length for r in path_sweep.rows}
    maps = sorted({r.map for r in path_sweep.rows})
    wins = [m for m in maps if math.isfinite(by[m, "igwo"])
            and all(by[m, "igwo"] <= by[m, o] for o in ("gwo", "pso", "woa"))]
    detail = "; ".join(f"{m}: " + " ".join(f"{a}={by[m, a]:.2f}" for a in ALGOS) for m in maps)
    check(acceptance_log, "path: IGWO mean best <= each baseline on >= 3 of 4 maps", len(wins) >= 3,
          f"{len(wins)}/4; {detail}")


def test_collision_oracle_equivalence(acceptance_log):
    mismatches = total = 0
    for seed in range(4):
        grid = generate_map(seed, density=0.25)
        occ = grid.occupancy
        rng = make_rng(1000 + seed)
        for _ in range(1000):
            p, q = rng.uniform(0, 20, 2), rng.uniform(0, 20, 2)
            mismatches += segment_obstacle_cells(p, q, grid) != dense_sampling_hits(p, q, occ)
            total += 1
    check(acceptance_log, "collision oracle: supercover == dense sampling (0.001 m)", mismatches == 0,
          f"{mismatches} mismatches in {total} segments")


def test_property_spiral_bound(acceptance_log):
    rng = make_rng(9)
    T = 200
    r4 = rng.random(1_000_000)
    t = rng.integers(0, T, 1_000_000)
    g = np.empty_like(r4)
    for step in range(T):
        sel = t == step
        g[sel] = spiral_factor(r4[sel], step, T)
    # scalar math-module evaluation on a subsample
    ref = [2 * math.exp(r4[i] ** ((T - t[i]) / T)) * math.sin(2 * math.pi * r4[i]) for i in range(0, 1_000_000, 997)]
    ok = np.all(np.abs(g) < 2 * math.e) and np.allclose(g[::997], ref, rtol=1e-12, atol=1e-15)
    check(acceptance_log, "property: |spiral_factor| < 2e over 1e6 samples", bool(ok),
          f"max {np.abs(g).max():.5f}")


def test_property_lobl_involution(acceptance_log):
    spec = ObjectiveSpec(5, [-100, -5, 0, 3, -1], [100, 5, 10, 4, 7], lambda x: 0.0)
    X = make_rng(3).uniform(spec.lower, spec.upper, (2000, 5))
    back = np.array([lobl_reflect(lobl_reflect(x, spec, 1.0), spec, 1.0) for x in X])
    err = np.abs(back - X).max()
    check(acceptance_log, "property: lobl_reflect twice at k = 1 is identity", err <= 1e-12, f"max error {err:.1e}")


def test_property_curves_monotone(acceptance_log, bench_sweep, path_sweep):
    stacks = list(bench_sweep[1].run_curves.values()) + list(path_sweep.run_curves.values())
    bad = sum(int(np.any(np.diff(c, axis=1) > 0)) for c in stacks)
    runs = sum(len(c) for c in stacks)
    check(acceptance_log, "property: every run's best-so-far curve is non-increasing", bad == 0,
          f"{runs} runs checked")


def test_property_positions_within_bounds(acceptance_log):
    violations = []
    for algo in ALGOS:
        for fid in ("F1", "F8", "F10"):
            spec = bench.get(fid).objective()

            def inspect(t, pop, spec=spec, tag=f"{algo}/{fid}"):
                if np.any(pop.positions < spec.lower) or np.any(pop.positions > spec.upper):
                    violations.append(f"{tag}@{t}")

            ev = Evaluator(spec)
            ev.subscribe(lambda X, f, spec=spec, tag=f"{algo}/{fid}": (
                violations.append(f"{tag}:eval") if np.any(X < spec.lower) or np.any(X > spec.upper) else None))
            run(make_optimizer(algo), spec, RunConfig(20, 50, 5), callback=inspect, evaluator=ev)
    check(acceptance_log, "property: positions within bounds after every iteration", not violations,
          ", ".join(violations[:5]) or "12 instrumented runs")


def test_property_gwo_equals_igwo_exploitation(acceptance_log):
    spec = bench.get("F1", 8).objective()
    rng = make_rng(12)
    X = rng.uniform(-100, 100, (12, 8))
    pop = Population(X, spec.batch(X))
    draws = rng.random((2, 12, 3, 8))
    results = []
    for step in ("baseline", "phase"):
        pinned = PinnedRNG(draws[0], draws[1])
        if step == "baseline":
            out = gwo_iteration(pop, 31, 200, pinned, spec, Evaluator(spec))
        else:
            out = gwo_exploitation_step(pop, select_leaders(pop), control_parameter(31, 200), pinned,
                                        spec, Evaluator(spec))
        results.append(out)
    same = np.array_equal(results[0].positions, results[1].positions) and np.array_equal(
        results[0].fitness, results[1].fitness)
    ablated = IGWO(use_acp=False, use_lobl=False)
    a = run(ablated, spec, RunConfig(12, 20, 4)).curve
    b = run(make_optimizer("gwo"), spec, RunConfig(12, 20, 4)).curve
    check(acceptance_log, "property: GWO baseline == IGWO exploitation phase on pinned draws",
          bool(same and np.array_equal(a, b)))
