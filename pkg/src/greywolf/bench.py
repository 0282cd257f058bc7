"""Classical 13-function test suite (F1-F13), dimension 30 by default.

Each function is written for a batch of points, shape ``(n, d)``, and
returns ``n`` values. Bounds are not enforced here; optimizers clamp.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import ObjectiveSpec


def sphere(X):
    return np.sum(X**2, axis=1)


def schwefel_2_22(X):
    A = np.abs(X)
    return np.sum(A, axis=1) + np.prod(A, axis=1)


def schwefel_1_2(X):
    return np.sum(np.cumsum(X, axis=1) ** 2, axis=1)


def schwefel_2_21(X):
    return np.max(np.abs(X), axis=1)


def rosenbrock(X):
    head, tail = X[:, :-1], X[:, 1:]
    return np.sum(100.0 * (tail - head**2) ** 2 + (head - 1.0) ** 2, axis=1)


def step(X):
    return np.sum(np.floor(X + 0.5) ** 2, axis=1)


def quartic(X):
    i = np.arange(1, X.shape[1] + 1)
    return np.sum(i * X**4, axis=1)


def schwefel(X):
    return np.sum(-X * np.sin(np.sqrt(np.abs(X))), axis=1)


def rastrigin(X):
    return np.sum(X**2 - 10.0 * np.cos(2.0 * np.pi * X) + 10.0, axis=1)


def ackley(X):
    d = X.shape[1]
    return (
        -20.0 * np.exp(-0.2 * np.sqrt(np.sum(X**2, axis=1) / d))
        - np.exp(np.sum(np.cos(2.0 * np.pi * X), axis=1) / d)
        + 20.0
        + np.e
    )


def griewank(X):
    i = np.arange(1, X.shape[1] + 1)
    return np.sum(X**2, axis=1) / 4000.0 - np.prod(np.cos(X / np.sqrt(i)), axis=1) + 1.0


def _u(X, a, k, m):
    return np.sum(
        np.where(X > a, k * (X - a) ** m, 0.0) + np.where(X < -a, k * (-X - a) ** m, 0.0),
        axis=1,
    )


def penalized_1(X):
    d = X.shape[1]
    y = 1.0 + (X + 1.0) / 4.0
    core = (
        10.0 * np.sin(np.pi * y[:, 0]) ** 2
        + np.sum((y[:, :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[:, 1:]) ** 2), axis=1)
        + (y[:, -1] - 1.0) ** 2
    )
    return np.pi / d * core + _u(X, 10.0, 100.0, 4)


def penalized_2(X):
    core = (
        np.sin(3.0 * np.pi * X[:, 0]) ** 2
        + np.sum((X[:, :-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * X[:, 1:]) ** 2), axis=1)
        + (X[:, -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * X[:, -1]) ** 2)
    )
    return 0.1 * core + _u(X, 5.0, 100.0, 4)


@dataclass(frozen=True)
class BenchmarkSpec:
    id: str
    name: str
    function: Callable[[np.ndarray], np.ndarray]
    bound: float
    optimizer_value: float
    noisy: bool = False
    dimension: int = 30

    @property
    def bounds(self):
        return (-self.bound, self.bound)

    @property
    def known_optimum(self) -> float:
        if self.id == "F8":
            return -418.9829 * self.dimension
        return 0.0

    @property
    def optimizer_point(self) -> np.ndarray:
        return np.full(self.dimension, self.optimizer_value)

    def with_dimension(self, dimension: int) -> "BenchmarkSpec":
        if dimension < 2:
            raise ValueError("benchmark dimension must be at least 2")
        return BenchmarkSpec(
            self.id, self.name, self.function, self.bound, self.optimizer_value,
            self.noisy, dimension,
        )

    def objective(self, rng: Optional[np.random.Generator] = None) -> ObjectiveSpec:
        """Bind to an :class:`ObjectiveSpec`. F7 needs ``rng`` for its noise."""
        return ObjectiveSpec(
            dimension=self.dimension,
            lower=-self.bound,
            upper=self.bound,
            evaluate=lambda x: float(evaluate(self.id, x, rng)),
            batch=lambda X: _batch(self, X, rng),
            name=self.id,
        )


def _batch(spec: BenchmarkSpec, X, rng):
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != spec.dimension:
        raise ValueError(f"{spec.id}: expected dimension {spec.dimension}, got {X.shape[1]}")
    values = spec.function(X)
    if spec.noisy:
        if rng is None:
            raise ValueError(f"{spec.id} needs a random stream for its noise term")
        values = values + rng.random(X.shape[0])
    return values


_SUITE = (
    BenchmarkSpec("F1", "Sphere", sphere, 100.0, 0.0),
    BenchmarkSpec("F2", "Schwefel 2.22", schwefel_2_22, 10.0, 0.0),
    BenchmarkSpec("F3", "Schwefel 1.2", schwefel_1_2, 100.0, 0.0),
    BenchmarkSpec("F4", "Schwefel 2.21", schwefel_2_21, 100.0, 0.0),
    BenchmarkSpec("F5", "Rosenbrock", rosenbrock, 30.0, 1.0),
    BenchmarkSpec("F6", "Step", step, 100.0, 0.0),
    BenchmarkSpec("F7", "Quartic with noise", quartic, 1.28, 0.0, noisy=True),
    BenchmarkSpec("F8", "Schwefel", schwefel, 500.0, 420.9687),
    BenchmarkSpec("F9", "Rastrigin", rastrigin, 5.12, 0.0),
    BenchmarkSpec("F10", "Ackley", ackley, 32.0, 0.0),
    BenchmarkSpec("F11", "Griewank", griewank, 600.0, 0.0),
    BenchmarkSpec("F12", "Penalized 1", penalized_1, 50.0, -1.0),
    BenchmarkSpec("F13", "Penalized 2", penalized_2, 50.0, 1.0),
)


def suite(dimension: int = 30) -> list:
    return [b if dimension == 30 else b.with_dimension(dimension) for b in _SUITE]


def get(function_id: str, dimension: int = 30) -> BenchmarkSpec:
    for b in _SUITE:
        if b.id == function_id.upper():
            return b if dimension == 30 else b.with_dimension(dimension)
    raise KeyError(f"unknown benchmark function {function_id!r}")


def evaluate(function_id: str, x, rng: Optional[np.random.Generator] = None) -> float:
    """Value of one function at one point. ``rng`` is consulted by F7 only."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("evaluate expects a single point")
    spec = get(function_id, max(x.shape[0], 2))
    if x.shape[0] < 2:
        raise ValueError("benchmark dimension must be at least 2")
    return float(_batch(spec, x[None, :], rng)[0])


def catalog(dimension: int = 30) -> list:
    """Machine-readable listing of the suite."""
    return [
        {
            "id": b.id,
            "name": b.name,
            "dimension": b.dimension,
            "lower": -b.bound,
            "upper": b.bound,
            "optimum": b.known_optimum,
            "optimizer": b.optimizer_value,
            "noisy": b.noisy,
        }
        for b in suite(dimension)
    ]
