"""Algorithm-agnostic swarm machinery.

Populations are stored as arrays (``positions`` of shape ``(n, d)`` and
``fitness`` of shape ``(n,)``) rather than lists of agent objects; every
optimizer in the package updates these arrays in bulk.

Randomness: every stochastic draw goes through a :class:`numpy.random.Generator`
backed by PCG64 and created with :func:`make_rng`. The same seed yields the
same sequence of draws on every platform numpy supports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Protocol

import numpy as np


class ConfigurationError(ValueError):
    """Invalid bounds, budgets or algorithm parameters."""


class EvaluationError(RuntimeError):
    """The objective returned a non-finite value."""

    def __init__(self, message: str, position: Optional[np.ndarray] = None):
        super().__init__(message)
        self.position = position


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 stream for a 64-bit unsigned seed."""
    if seed < 0 or seed >= 2**64:
        raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


@dataclass
class ObjectiveSpec:
    """Box-bounded minimization problem.

    ``evaluate`` maps one position to a float. ``batch``, when given, maps an
    ``(n, d)`` array to ``n`` values and must agree with ``evaluate`` row by
    row; optimizers always go through :class:`Evaluator`, which prefers it.
    """

    dimension: int
    lower: np.ndarray
    upper: np.ndarray
    evaluate: Callable[[np.ndarray], float]
    batch: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = "objective"

    def __post_init__(self):
        self.lower = np.broadcast_to(np.asarray(self.lower, dtype=float), (self.dimension,)).copy()
        self.upper = np.broadcast_to(np.asarray(self.upper, dtype=float), (self.dimension,)).copy()
        if self.dimension < 1:
            raise ConfigurationError("dimension must be positive")
        if not np.all(self.lower < self.upper):
            bad = int(np.argmin(self.lower < self.upper))
            raise ConfigurationError(
                f"invalid bounds on dimension {bad}: "
                f"[{self.lower[bad]}, {self.upper[bad]}]"
            )


@dataclass(frozen=True)
class RunConfig:
    population: int = 40
    iterations: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.population < 4:
            raise ConfigurationError("population must be at least 4")
        if self.iterations < 1:
            raise ConfigurationError("iterations must be at least 1")
        if self.seed < 0 or self.seed >= 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")


@dataclass
class RunResult:
    best_position: np.ndarray
    best_fitness: float
    curve: np.ndarray
    evaluations: int


@dataclass
class Population:
    positions: np.ndarray
    fitness: np.ndarray

    def __len__(self) -> int:
        return self.positions.shape[0]

    def copy(self) -> "Population":
        return Population(self.positions.copy(), self.fitness.copy())


def clamp(position: np.ndarray, spec: ObjectiveSpec) -> np.ndarray:
    """Project onto the box. Works on a single vector or on rows of a matrix."""
    position = np.asarray(position, dtype=float)
    if position.shape[-1] != spec.dimension:
        raise ValueError(
            f"position length {position.shape[-1]} does not match dimension {spec.dimension}"
        )
    return np.clip(position, spec.lower, spec.upper)


@dataclass
class Evaluator:
    """Counts objective calls and remembers the best point ever evaluated.

    The remembered best is what run results report, so an optimizer may
    overwrite agents freely without losing the incumbent.
    """

    spec: ObjectiveSpec
    evaluations: int = 0
    best_position: Optional[np.ndarray] = None
    best_fitness: float = np.inf
    _observers: list = field(default_factory=list)

    def __call__(self, positions: np.ndarray) -> np.ndarray:
        positions = np.atleast_2d(np.asarray(positions, dtype=float))
        if self.spec.batch is not None:
            values = np.asarray(self.spec.batch(positions), dtype=float)
        else:
            values = np.array([self.spec.evaluate(p) for p in positions], dtype=float)
        self.evaluations += positions.shape[0]
        if np.isnan(values).any():
            i = int(np.flatnonzero(np.isnan(values))[0])
            raise EvaluationError(
                f"objective returned NaN at position {positions[i].tolist()}", positions[i]
            )
        i = int(np.argmin(values))
        if values[i] < self.best_fitness:
            self.best_fitness = float(values[i])
            self.best_position = positions[i].copy()
        for observer in self._observers:
            observer(positions, values)
        return values

    def subscribe(self, observer: Callable[[np.ndarray, np.ndarray], None]) -> None:
        """Call ``observer(positions, values)`` after every batch."""
        self._observers.append(observer)


def initialize_population(
    spec: ObjectiveSpec, n: int, rng: np.random.Generator, evaluator: Optional[Evaluator] = None
) -> Population:
    if n < 1:
        raise ConfigurationError("population size must be positive")
    if not np.all(spec.lower < spec.upper):
        raise ConfigurationError("invalid bounds")
    evaluator = evaluator or Evaluator(spec)
    u = rng.random((n, spec.dimension))
    positions = spec.lower + u * (spec.upper - spec.lower)
    return Population(positions, evaluator(positions))


class Optimizer(Protocol):
    """Per-iteration update procedure plugged into :func:`run`.

    ``start`` is called once after initialization (for optimizers carrying
    state such as PSO velocities); ``iterate`` performs iteration ``t`` of
    ``T`` and returns the new population.
    """

    name: str

    def start(self, population: Population, evaluator: Evaluator, rng: np.random.Generator) -> None:
        ...

    def iterate(
        self,
        population: Population,
        t: int,
        T: int,
        rng: np.random.Generator,
        evaluator: Evaluator,
    ) -> Population:
        ...


def run(
    optimizer: Optimizer,
    spec: ObjectiveSpec,
    config: RunConfig,
    callback: Optional[Callable[[int, Population], None]] = None,
    evaluator: Optional[Evaluator] = None,
) -> RunResult:
    """Initialize, iterate ``config.iterations`` times and report the best point.

    ``curve[t]`` is the lowest objective value evaluated up to the end of
    iteration ``t``. ``callback(t, population)`` fires after each iteration.
    """
    rng = make_rng(config.seed)
    evaluator = evaluator or Evaluator(spec)
    population = initialize_population(spec, config.population, rng, evaluator)
    optimizer.start(population, evaluator, rng)
    T = config.iterations
    curve = np.empty(T)
    for t in range(T):
        population = optimizer.iterate(population, t, T, rng, evaluator)
        curve[t] = evaluator.best_fitness
        if callback is not None:
            callback(t, population)
    return RunResult(
        best_position=evaluator.best_position.copy(),
        best_fitness=float(evaluator.best_fitness),
        curve=curve,
        evaluations=evaluator.evaluations,
    )
