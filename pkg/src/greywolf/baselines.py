"""Comparison optimizers: canonical GWO, global-best PSO and WOA.

GWO shares its position update with :mod:`greywolf.igwo` so the two differ
only by the extra IGWO phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigurationError, Evaluator, ObjectiveSpec, Population, clamp
from .igwo import control_parameter, gwo_exploitation_step, select_leaders


def gwo_iteration(population, t, T, rng, spec, evaluator):
    leaders = select_leaders(population)
    return gwo_exploitation_step(population, leaders, control_parameter(t, T), rng, spec, evaluator)


class GWO:
    name = "gwo"

    def start(self, population, evaluator, rng):
        pass

    def iterate(self, population, t, T, rng, evaluator):
        return gwo_iteration(population, t, T, rng, evaluator.spec, evaluator)


@dataclass(frozen=True)
class PSOParams:
    inertia_start: float = 0.9
    inertia_end: float = 0.4
    c1: float = 2.0
    c2: float = 2.0
    v_max_fraction: float = 0.2

    def __post_init__(self):
        if not self.inertia_start >= self.inertia_end >= 0:
            raise ConfigurationError("need inertia_start >= inertia_end >= 0")
        if self.c1 < 0 or self.c2 < 0:
            raise ConfigurationError("acceleration coefficients must be non-negative")
        if not 0 < self.v_max_fraction <= 1:
            raise ConfigurationError("v_max_fraction must lie in (0, 1]")

    def inertia(self, t: int, T: int) -> float:
        """Linear decay reaching ``inertia_end`` on the last iteration."""
        if T <= 1:
            return self.inertia_start
        return self.inertia_start - (self.inertia_start - self.inertia_end) * t / (T - 1)


@dataclass
class PSOState:
    velocities: np.ndarray
    pbest_positions: np.ndarray
    pbest_fitness: np.ndarray
    gbest_position: np.ndarray
    gbest_fitness: float

    @classmethod
    def from_population(cls, population: Population) -> "PSOState":
        i = int(np.argmin(population.fitness))
        return cls(
            velocities=np.zeros_like(population.positions),
            pbest_positions=population.positions.copy(),
            pbest_fitness=population.fitness.copy(),
            gbest_position=population.positions[i].copy(),
            gbest_fitness=float(population.fitness[i]),
        )


def pso_iteration(
    population: Population,
    state: PSOState,
    t: int,
    T: int,
    rng: np.random.Generator,
    spec: ObjectiveSpec,
    evaluator: Evaluator,
    params: PSOParams = PSOParams(),
):
    """One velocity/position update. Draws ``r1`` then ``r2``, each ``(n, d)``."""
    X = population.positions
    n, d = X.shape
    w = params.inertia(t, T)
    r1 = rng.random((n, d))
    r2 = rng.random((n, d))
    v = (
        w * state.velocities
        + params.c1 * r1 * (state.pbest_positions - X)
        + params.c2 * r2 * (state.gbest_position - X)
    )
    v_max = params.v_max_fraction * (spec.upper - spec.lower)
    v = np.clip(v, -v_max, v_max)
    X = clamp(X + v, spec)
    f = evaluator(X)

    improved = f < state.pbest_fitness
    pbest_x = np.where(improved[:, None], X, state.pbest_positions)
    pbest_f = np.where(improved, f, state.pbest_fitness)
    i = int(np.argmin(pbest_f))
    if pbest_f[i] < state.gbest_fitness:
        gbest_x, gbest_f = pbest_x[i].copy(), float(pbest_f[i])
    else:
        gbest_x, gbest_f = state.gbest_position, state.gbest_fitness
    return Population(X, f), PSOState(v, pbest_x, pbest_f, gbest_x, gbest_f)


class PSO:
    name = "pso"

    def __init__(self, params: PSOParams = PSOParams()):
        self.params = params
        self.state = None

    def start(self, population, evaluator, rng):
        self.state = PSOState.from_population(population)

    def iterate(self, population, t, T, rng, evaluator):
        population, self.state = pso_iteration(
            population, self.state, t, T, rng, evaluator.spec, evaluator, self.params
        )
        return population


@dataclass(frozen=True)
class WOAParams:
    spiral_b: float = 1.0
    spiral_probability: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.spiral_probability <= 1.0:
            raise ConfigurationError("spiral_probability must lie in [0, 1]")


def woa_positions(X, best, a, r1, r2, p, l, partner, params: WOAParams):
    """WOA moves for pre-drawn per-agent scalars.

    ``partner`` holds the random-agent indices used by the exploration branch.
    """
    A = 2.0 * a * r1 - a
    C = 2.0 * r2
    encircle = p < 1.0 - params.spiral_probability
    explore = encircle & (np.abs(A) >= 1.0)
    guide = np.where(explore[:, None], X[partner], best)
    shrink = guide - A[:, None] * np.abs(C[:, None] * guide - X)
    spiral = (
        np.abs(best - X) * (np.exp(params.spiral_b * l) * np.cos(2.0 * np.pi * l))[:, None]
        + best
    )
    return np.where(encircle[:, None], shrink, spiral)


def woa_iteration(
    population: Population,
    t: int,
    T: int,
    rng: np.random.Generator,
    spec: ObjectiveSpec,
    evaluator: Evaluator,
    params: WOAParams = WOAParams(),
) -> Population:
    """Draw order per iteration: r1, r2, p, l (each ``n``), then partner indices."""
    X = population.positions
    n = X.shape[0]
    a = control_parameter(t, T)
    r1 = rng.random(n)
    r2 = rng.random(n)
    p = rng.random(n)
    l = rng.uniform(-1.0, 1.0, n)
    partner = rng.integers(0, n, n)
    new = clamp(woa_positions(X, evaluator.best_position, a, r1, r2, p, l, partner, params), spec)
    return Population(new, evaluator(new))


class WOA:
    name = "woa"

    def __init__(self, params: WOAParams = WOAParams()):
        self.params = params

    def start(self, population, evaluator, rng):
        pass

    def iterate(self, population, t, T, rng, evaluator):
        return woa_iteration(population, t, T, rng, evaluator.spec, evaluator, self.params)
