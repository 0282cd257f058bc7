import filecmp
import json

import numpy as np
import pytest

from greywolf import ConfigurationError
from greywolf.cli import main
from greywolf.experiments import (
    ExperimentConfig,
    StatRow,
    emit_report,
    read_stats_csv,
    run_bench_experiment,
    run_path_experiment,
    summarize,
)
from greywolf.pathplan import GridMap, generate_map, save_map


def small_bench(**kw):
    base = dict(algorithms=["igwo", "gwo"], functions=["F1", "F9"], runs=3,
                population=8, iterations=10, dimension=5)
    base.update(kw)
    return ExperimentConfig(**base)


def small_path(**kw):
    base = dict(mode="path", algorithms=["igwo", "pso"], runs=2, population=8,
                iterations=10, gen_maps=2, points=6)
    base.update(kw)
    return ExperimentConfig(**base)


def same_tree(a, b):
    cmp = filecmp.dircmp(a, b)
    assert not cmp.left_only and not cmp.right_only
    _, mismatch, errors = filecmp.cmpfiles(a, b, cmp.common_files, shallow=False)
    assert not mismatch and not errors, mismatch
    for sub in cmp.common_dirs:
        same_tree(a / sub, b / sub)


def test_summarize_sample_std():
    row = summarize("igwo", "F1", [1.0, 2.0, 4.0])
    assert row.avg == pytest.approx(7 / 3)
    assert row.std == pytest.approx(np.std([1, 2, 4], ddof=1))
    assert (row.best, row.worst) == (1.0, 4.0)


def test_summarize_single_run_zero_std():
    assert summarize("gwo", "F2", [3.5]).std == 0.0


def test_emit_report_rows_and_round_trip(tmp_path):
    rows = [StatRow("gwo", "F10", 1e-3, 2e-4, 1e-5, 3e-3), StatRow("igwo", "F2", 0.1, 0.0, 0.1, 0.1),
            StatRow("igwo", "F10", 1 / 3, 1e-300, 0.0, 1.0), StatRow("gwo", "F2", 5.0, 1.0, 4.0, 6.0)]
    emit_report(rows, tmp_path)
    lines = (tmp_path / "stats.csv").read_text().splitlines()
    assert lines[0] == "algorithm,problem,avg,std,best,worst"
    assert len(lines) == 5
    back = read_stats_csv(tmp_path / "stats.csv")
    assert [(r.algorithm, r.problem) for r in back] == [("igwo", "F2"), ("igwo", "F10"), ("gwo", "F2"), ("gwo", "F10")]
    assert set(back) == set(rows)
    assert "igwo" in (tmp_path / "stats.txt").read_text()


def test_emit_report_refuses_empty(tmp_path):
    with pytest.raises(ValueError):
        emit_report([], tmp_path)


def test_bench_experiment_outputs(tmp_path):
    out = run_bench_experiment(small_bench(), tmp_path)
    assert len(out.rows) == 4
    for row in out.rows:
        assert row.best <= row.avg <= row.worst and row.std >= 0
    for key, finals in out.finals.items():
        assert len(finals) == 3
    assert sorted(p.name for p in (tmp_path / "curves").iterdir()) == [
        "gwo_F1.csv", "gwo_F9.csv", "igwo_F1.csv", "igwo_F9.csv"]
    curve = (tmp_path / "curves" / "igwo_F1.csv").read_text().splitlines()
    assert curve[0] == "iteration,best_so_far" and len(curve) == 11
    evals = (tmp_path / "evaluations.csv").read_text().splitlines()
    assert evals[1].startswith("igwo,F1,3,")


def test_bench_experiment_deterministic(tmp_path):
    run_bench_experiment(small_bench(algorithms=["igwo", "gwo", "pso", "woa"], functions=["F7", "F1"]), tmp_path / "a")
    run_bench_experiment(small_bench(algorithms=["igwo", "gwo", "pso", "woa"], functions=["F7", "F1"]), tmp_path / "b")
    same_tree(tmp_path / "a", tmp_path / "b")


def test_seed_derivation_matches_single_run(tmp_path):
    from greywolf import RunConfig, bench, make_optimizer, run
    from greywolf.experiments import noise_rng

    cfg = small_bench(base_seed=100, functions=["F1"], algorithms=["gwo"])
    out = run_bench_experiment(cfg, tmp_path)
    spec = bench.get("F1", 5)
    single = run(make_optimizer("gwo"), spec.objective(noise_rng(102)), RunConfig(8, 10, 102))
    assert out.finals["gwo", "F1"][2] == single.best_fitness


def test_unknown_names_rejected_before_running(tmp_path):
    with pytest.raises(ConfigurationError):
        run_bench_experiment(small_bench(functions=["F1", "F99"]), tmp_path)
    with pytest.raises(ConfigurationError):
        run_bench_experiment(small_bench(algorithms=["igwo", "sa"]), tmp_path)
    assert not (tmp_path / "stats.csv").exists()


def test_path_experiment_outputs_and_determinism(tmp_path):
    out = run_path_experiment(small_path(), tmp_path / "a")
    run_path_experiment(small_path(), tmp_path / "b")
    same_tree(tmp_path / "a", tmp_path / "b")
    assert len(out.rows) == 4
    assert sorted(p.name for p in (tmp_path / "a" / "maps").iterdir()) == ["map1.json", "map2.json"]
    pts = (tmp_path / "a" / "paths" / "map1_igwo.csv").read_text().splitlines()
    assert pts[0] == "x,y" and len(pts) == 1 + 6
    header = (tmp_path / "a" / "path_table.csv").read_text().splitlines()[0]
    assert header.startswith("map,algorithm,best_length")
    for row in out.rows:
        assert row.oracle_length >= 19 * 2**0.5 - 1e-9
        if row.feasible_runs:
            assert row.winner_collisions == 0
            assert row.best_length >= row.oracle_length


def test_path_experiment_empty_map(tmp_path):
    save_map(GridMap(), tmp_path / "empty.json")
    out = run_path_experiment(
        small_path(maps=[str(tmp_path / "empty.json")], iterations=60, population=20, runs=2,
                   algorithms=["igwo", "gwo", "pso", "woa"], points=20),
        tmp_path / "out",
    )
    for row in out.rows:
        assert row.best_length >= 19 * 2**0.5 - 1e-9
        assert row.winner_collisions == 0


def test_path_experiment_rejects_disconnected_map(tmp_path):
    wall = GridMap(obstacles=frozenset((c, 10) for c in range(20)))
    save_map(wall, tmp_path / "wall.json")
    with pytest.raises(Exception, match="not connected"):
        run_path_experiment(small_path(maps=[str(tmp_path / "wall.json")]), tmp_path / "out")
    assert not (tmp_path / "out" / "path_table.csv").exists()


def test_cli_bench(tmp_path, capsys):
    code = main(["--mode", "bench", "--algo", "igwo", "--func", "f1", "--runs", "2",
                 "--pop", "6", "--iters", "5", "--dim", "3", "--out", str(tmp_path)])
    assert code == 0
    assert "igwo" in capsys.readouterr().out
    assert (tmp_path / "stats.csv").exists()


def test_cli_config_file_with_overrides(tmp_path):
    cfg = {"mode": "bench", "algorithms": ["gwo"], "functions": ["F2"], "runs": 5,
           "population": 6, "iterations": 5, "dimension": 3, "out": str(tmp_path / "x")}
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    assert main(["--config", str(tmp_path / "cfg.json"), "--runs", "2", "--out", str(tmp_path / "y")]) == 0
    assert not (tmp_path / "x").exists()
    assert len(read_stats_csv(tmp_path / "y" / "stats.csv")) == 1


def test_cli_path_with_map_files(tmp_path):
    save_map(generate_map(1), tmp_path / "m.json")
    code = main(["--mode", "path", "--map", str(tmp_path / "m.json"), "--algo", "gwo", "--runs", "1",
                 "--pop", "6", "--iters", "3", "--points", "5", "--out", str(tmp_path / "o")])
    assert code == 0
    assert (tmp_path / "o" / "paths" / "m_gwo.csv").exists()


def test_cli_igwo_ablation_flags(tmp_path):
    code = main(["--mode", "bench", "--algo", "igwo", "--func", "F1", "--runs", "1", "--pop", "5",
                 "--iters", "3", "--dim", "2", "--k", "2", "--no-lobl", "--out", str(tmp_path)])
    assert code == 0


@pytest.mark.parametrize(
    "argv, code, category",
    [
        (["--algo", "nope"], 2, "config"),
        (["--func", "F77"], 2, "config"),
        (["--runs", "0"], 2, "config"),
        (["--mode", "path", "--map", "/nonexistent/map.json"], 4, "io"),
    ],
)
def test_cli_error_categories(argv, code, category, capsys, tmp_path):
    assert main(argv + ["--out", str(tmp_path)]) == code
    assert f"error[{category}]" in capsys.readouterr().err


def test_cli_bad_map_file_is_config_error(tmp_path, capsys):
    (tmp_path / "bad.json").write_text('{"width": 20}')
    assert main(["--mode", "path", "--map", str(tmp_path / "bad.json"), "--out", str(tmp_path)]) == 2
    assert "missing field" in capsys.readouterr().err


def test_cli_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code = main(["--func", "F1", "--algo", "gwo", "--runs", "1", "--pop", "4", "--iters", "1",
                 "--out", str(blocker / "sub")])
    assert code == 4
    assert "error[io]" in capsys.readouterr().err


def test_cli_catalog(capsys):
    assert main(["--catalog"]) == 0
    listing = json.loads(capsys.readouterr().out)
    assert [f["id"] for f in listing] == [f"F{i}" for i in range(1, 14)]


def test_empty_map_igwo_near_straight_line(tmp_path):
    out = run_path_experiment(
        small_path(algorithms=["igwo"], runs=5, population=40, iterations=200, points=20),
        tmp_path, maps=[("empty", GridMap())],
    )
    assert out.rows[0].best_length <= 1.01 * 19 * 2**0.5
