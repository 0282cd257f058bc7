"""Waypoint encoding and the penalized path-length objective.

A decision vector holds the ``m - 2`` interior waypoints as
``(x1, y1, ..., x_{m-2}, y_{m-2})``; start and goal are fixed by the map.

Objective: total polyline length when the path touches no obstacle cell,
otherwise ``P * nO`` where ``nO`` sums, over segments, the distinct obstacle
cells each segment touches. In ``additive`` mode the value is
``length + P * nO`` instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import ObjectiveSpec
from ..kernels import evaluate_paths, segment_hits
from .grid import GridMap

MODES = ("literal", "additive")


@dataclass(frozen=True)
class PenaltyConfig:
    P: float = 10.0
    mode: str = "literal"

    def __post_init__(self):
        if not self.P > 0:
            raise ValueError("penalty coefficient must be positive")
        if self.mode not in MODES:
            raise ValueError(f"penalty mode must be one of {MODES}")


def decode(position, grid: GridMap, m: int) -> np.ndarray:
    """Polyline of shape ``(m, 2)``: start, interior points, goal."""
    position = np.asarray(position, dtype=float)
    if position.shape != (2 * (m - 2),):
        raise ValueError(f"expected {2 * (m - 2)} coordinates for m={m}, got {position.shape}")
    return np.vstack([grid.start, position.reshape(-1, 2), grid.goal])


def encode(path) -> np.ndarray:
    """Inverse of :func:`decode`: interior points flattened."""
    return np.asarray(path, dtype=float)[1:-1].reshape(-1).copy()


def path_length(path) -> float:
    path = np.asarray(path, dtype=float)
    total = 0.0
    for (x0, y0), (x1, y1) in zip(path[:-1].tolist(), path[1:].tolist()):
        total += math.sqrt((x1 - x0) * (x1 - x0) + (y1 - y0) * (y1 - y0))
    return total


def segment_obstacle_cells(p, q, grid: GridMap, occ=None) -> int:
    occ = grid.occupancy if occ is None else occ
    s = grid.cell_size
    return int(segment_hits(p[0] / s, p[1] / s, q[0] / s, q[1] / s, occ))


def count_obstacle_intersections(path, grid: GridMap) -> int:
    path = np.asarray(path, dtype=float).tolist()
    occ = grid.occupancy
    return sum(segment_obstacle_cells(p, q, grid, occ) for p, q in zip(path[:-1], path[1:]))


def combine(length, n_hits, penalty: PenaltyConfig):
    length = np.asarray(length, dtype=float)
    n_hits = np.asarray(n_hits)
    if penalty.mode == "additive":
        return length + penalty.P * n_hits
    return np.where(n_hits > 0, penalty.P * n_hits, length)


def path_objective(position, grid: GridMap, m: int = 20, penalty: PenaltyConfig = PenaltyConfig()) -> float:
    path = decode(position, grid, m)
    return float(combine(path_length(path), count_obstacle_intersections(path, grid), penalty))


class PathProblem:
    """Path planning on one map as an :class:`ObjectiveSpec`.

    Every evaluation goes through the batch kernel; the shortest
    collision-free path seen so far is archived in ``best_feasible_*``.
    Create one instance per run.
    """

    def __init__(self, grid: GridMap, m: int = 20, penalty: PenaltyConfig = PenaltyConfig()):
        if m < 3:
            raise ValueError("need at least one interior waypoint (m >= 3)")
        self.grid = grid
        self.m = m
        self.penalty = penalty
        self._occ = grid.occupancy
        self.best_feasible_length = math.inf
        self.best_feasible_position = None
        w, h = grid.extent
        k = m - 2
        self.spec = ObjectiveSpec(
            dimension=2 * k,
            lower=np.zeros(2 * k),
            upper=np.tile([w, h], k),
            evaluate=lambda x: float(self.batch(np.asarray(x, dtype=float)[None, :])[0]),
            batch=self.batch,
            name="path",
        )

    def measure(self, positions):
        """``(lengths, collision counts)`` for rows of ``positions``."""
        positions = np.atleast_2d(np.asarray(positions, dtype=float))
        return evaluate_paths(positions, self.grid.start, self.grid.goal, self._occ, self.grid.cell_size)

    def batch(self, positions):
        positions = np.atleast_2d(np.asarray(positions, dtype=float))
        lengths, hits = self.measure(positions)
        free = np.flatnonzero(hits == 0)
        if free.size:
            i = free[np.argmin(lengths[free])]
            if lengths[i] < self.best_feasible_length:
                self.best_feasible_length = float(lengths[i])
                self.best_feasible_position = positions[i].copy()
        return combine(lengths, hits, self.penalty)
