"""Time the compiled path kernel against the pure-Python fallback.

Usage:
    python3 benchmarks/bench_kernels.py [--batch 40] [--points 20] [--repeat 5]

A batch of 40 candidate paths is what one optimizer iteration evaluates
at the default population size.
"""
import argparse
import timeit

import numpy as np

from greywolf import _pykernels, make_rng
from greywolf.pathplan import generate_map

try:
    from greywolf import _ckernels
except ImportError:
    _ckernels = None


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--batch", type=int, default=40)
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    grid = generate_map(args.seed)
    occ = grid.occupancy
    X = make_rng(args.seed).uniform(0, grid.width, (args.batch, 2 * (args.points - 2)))
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled extension not built; timing the fallback only")

    timings = {}
    outputs = {}
    for name, mod in backends.items():
        call = lambda mod=mod: mod.evaluate_paths(X, grid.start, grid.goal, occ, grid.cell_size)
        outputs[name] = call()
        number = 200 if name == "cython" else 5
        best = min(timeit.repeat(call, number=number, repeat=args.repeat)) / number
        timings[name] = best
        print(f"{name:>7}: {best * 1e3:9.4f} ms per batch of {args.batch} paths")

    if "cython" in timings:
        same = all(np.array_equal(a, b) for a, b in zip(outputs["python"], outputs["cython"]))
        print(f"speedup: {timings['python'] / timings['cython']:.1f}x  (outputs identical: {same})")


if __name__ == "__main__":
    main()
