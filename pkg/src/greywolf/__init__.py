"""Improved Grey Wolf Optimizer, baseline swarms, benchmarks and grid path planning."""

from .baselines import GWO, PSO, WOA, PSOParams, WOAParams
from .core import (
    ConfigurationError,
    EvaluationError,
    Evaluator,
    ObjectiveSpec,
    Population,
    RunConfig,
    RunResult,
    clamp,
    initialize_population,
    make_rng,
    run,
)
from .igwo import IGWO, LOBLConfig

ALGORITHMS = ("igwo", "gwo", "pso", "woa")


def make_optimizer(name: str, **params):
    """Optimizer by name: ``igwo``, ``gwo``, ``pso`` or ``woa``."""
    name = name.lower()
    if name == "igwo":
        return IGWO(**params)
    if name == "gwo":
        if params:
            raise TypeError(f"gwo takes no parameters, got {sorted(params)}")
        return GWO()
    if name == "pso":
        return PSO(PSOParams(**params))
    if name == "woa":
        return WOA(WOAParams(**params))
    raise ConfigurationError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")


__version__ = "0.1.0"
