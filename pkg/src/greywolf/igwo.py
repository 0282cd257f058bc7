"""Improved Grey Wolf Optimizer.

One iteration runs three phases in order:

1. cooperative predation: each wolf moves relative to the pack centroid and
   to either the alpha or the beta/delta midpoint, scaled by a spiral factor;
   moves are kept only when they improve the wolf;
2. canonical GWO exploitation around alpha, beta and delta (leaders are
   re-selected after phase 1);
3. lens opposition: each wolf is reflected through the midpoint of the
   search box, shrunk by the lens factor ``k``, and kept if better.

Iteration indices are zero-based throughout (``t`` in ``0..T-1``). The
spiral exponent ``(T - t) / T`` therefore runs from 1 down to ``1/T``, the
same values as the one-based form ``(T - t + 1) / T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import ConfigurationError, Evaluator, ObjectiveSpec, Population, clamp


class Leaders(NamedTuple):
    alpha: np.ndarray
    beta: np.ndarray
    delta: np.ndarray
    indices: tuple


def select_leaders(population: Population) -> Leaders:
    """Three fittest agents; ties go to the lower index."""
    if len(population) < 3:
        raise ValueError("need at least three agents to select leaders")
    order = np.argsort(population.fitness, kind="stable")[:3]
    p = population.positions
    return Leaders(p[order[0]].copy(), p[order[1]].copy(), p[order[2]].copy(), tuple(int(i) for i in order))


def control_parameter(t: int, T: int) -> float:
    """Linear schedule ``a = 2 (1 - t/T)``, from 2 at t=0 towards 0."""
    if not 0 <= t < T:
        raise ValueError(f"iteration index {t} outside [0, {T})")
    return 2.0 * (1.0 - t / T)


def population_centroid(positions: np.ndarray) -> np.ndarray:
    positions = np.asarray(positions, dtype=float)
    if positions.ndim != 2 or positions.shape[0] == 0:
        raise ValueError("centroid of an empty population")
    return positions.mean(axis=0)


def spiral_factor(r4, t: int, T: int):
    """``2 exp(r4 ** ((T - t) / T)) sin(2 pi r4)``; vectorized over ``r4``."""
    if not 0 <= t < T:
        raise ValueError(f"iteration index {t} outside [0, {T})")
    r4 = np.asarray(r4, dtype=float)
    s = (T - t) / T
    return 2.0 * np.exp(r4**s) * np.sin(2.0 * np.pi * r4)


def acp_step(
    population: Population,
    leaders: Leaders,
    t: int,
    T: int,
    rng: np.random.Generator,
    spec: ObjectiveSpec,
    evaluator: Evaluator,
) -> Population:
    """Cooperative-predation move with greedy acceptance.

    Draws ``r3`` (n values) then ``r4`` (n values). The centroid is taken
    from the population as it was before the step.
    """
    X = population.positions
    n = X.shape[0]
    centroid = population_centroid(X)
    r3 = rng.random(n)
    r4 = rng.random(n)
    gamma = spiral_factor(r4, t, T)
    target = np.where((r3 < 0.5)[:, None], leaders.alpha, 0.5 * (leaders.beta + leaders.delta))
    candidates = r3[:, None] * centroid + gamma[:, None] * (target - X)
    candidates = clamp(candidates, spec)
    values = evaluator(candidates)
    better = values < population.fitness
    positions = np.where(better[:, None], candidates, X)
    fitness = np.where(better, values, population.fitness)
    return Population(positions, fitness)


def exploitation_positions(
    positions: np.ndarray, leaders: Leaders, a: float, r1: np.ndarray, r2: np.ndarray
) -> np.ndarray:
    """Average of the three leader-guided moves for draws of shape ``(n, 3, d)``."""
    L = np.stack([leaders.alpha, leaders.beta, leaders.delta])
    A = 2.0 * a * r1 - a
    C = 2.0 * r2
    D = np.abs(C * L - positions[:, None, :])
    return (L - A * D).mean(axis=1)


def gwo_exploitation_step(
    population: Population,
    leaders: Leaders,
    a: float,
    rng: np.random.Generator,
    spec: ObjectiveSpec,
    evaluator: Evaluator,
) -> Population:
    """Canonical GWO position update; every agent is replaced.

    Draws ``r1`` then ``r2``, each of shape ``(n, 3, d)`` with the leader
    axis ordered alpha, beta, delta.
    """
    if not 0.0 <= a <= 2.0:
        raise ValueError(f"control parameter {a} outside [0, 2]")
    n, d = population.positions.shape
    r1 = rng.random((n, 3, d))
    r2 = rng.random((n, 3, d))
    new = clamp(exploitation_positions(population.positions, leaders, a, r1, r2), spec)
    return Population(new, evaluator(new))


def lobl_reflect(position: np.ndarray, spec: ObjectiveSpec, k: float) -> np.ndarray:
    """Lens-opposite point, clamped. At ``k = 1`` this is ``lower + upper - x``."""
    if not (k > 0 and np.isfinite(k)):
        raise ConfigurationError(f"lens factor k must be finite and positive, got {k}")
    mid = 0.5 * (spec.lower + spec.upper)
    reflected = mid + mid / k - np.asarray(position, dtype=float) / k
    return clamp(reflected, spec)


def lobl_step(
    population: Population, spec: ObjectiveSpec, k: float, evaluator: Evaluator
) -> Population:
    candidates = lobl_reflect(population.positions, spec, k)
    values = evaluator(candidates)
    better = values < population.fitness
    return Population(
        np.where(better[:, None], candidates, population.positions),
        np.where(better, values, population.fitness),
    )


@dataclass(frozen=True)
class LOBLConfig:
    k: float = 1.0e4

    def __post_init__(self):
        if not (self.k > 0 and np.isfinite(self.k)):
            raise ConfigurationError(f"lens factor k must be finite and positive, got {self.k}")


def igwo_iteration(
    population: Population,
    t: int,
    T: int,
    rng: np.random.Generator,
    spec: ObjectiveSpec,
    evaluator: Evaluator,
    lobl: LOBLConfig = LOBLConfig(),
    use_acp: bool = True,
    use_lobl: bool = True,
) -> Population:
    if use_acp:
        population = acp_step(population, select_leaders(population), t, T, rng, spec, evaluator)
    leaders = select_leaders(population)
    population = gwo_exploitation_step(
        population, leaders, control_parameter(t, T), rng, spec, evaluator
    )
    if use_lobl:
        population = lobl_step(population, spec, lobl.k, evaluator)
    return population


class IGWO:
    """IGWO as a :func:`greywolf.core.run` optimizer.

    ``use_acp`` / ``use_lobl`` switch the two extra phases off for ablation;
    with both off the update is plain GWO.
    """

    def __init__(self, k: float = 1.0e4, use_acp: bool = True, use_lobl: bool = True):
        self.lobl = LOBLConfig(k)
        self.use_acp = use_acp
        self.use_lobl = use_lobl
        self.name = "igwo"

    def start(self, population, evaluator, rng):
        pass

    def iterate(self, population, t, T, rng, evaluator):
        return igwo_iteration(
            population, t, T, rng, evaluator.spec, evaluator,
            lobl=self.lobl, use_acp=self.use_acp, use_lobl=self.use_lobl,
        )
