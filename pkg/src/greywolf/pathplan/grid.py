"""Occupancy-grid maps: model, seeded generator, JSON map files."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..core import make_rng


class MapFormatError(ValueError):
    """Malformed or inconsistent map file."""


class MapGenerationError(RuntimeError):
    """No feasible map found within the retry budget."""


@dataclass(frozen=True)
class GridMap:
    """Grid of ``width x height`` square cells of side ``cell_size`` metres.

    Cell ``(col, row)`` covers ``[col, col+1] x [row, row+1]`` in cell units,
    row 0 at the bottom. ``start`` and ``goal`` are in metres.
    """

    width: int = 20
    height: int = 20
    cell_size: float = 1.0
    obstacles: frozenset = field(default_factory=frozenset)
    start: tuple = (0.5, 0.5)
    goal: tuple = (19.5, 19.5)

    def __post_init__(self):
        object.__setattr__(self, "obstacles", frozenset((int(c), int(r)) for c, r in self.obstacles))
        object.__setattr__(self, "start", (float(self.start[0]), float(self.start[1])))
        object.__setattr__(self, "goal", (float(self.goal[0]), float(self.goal[1])))
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be positive")
        if not self.cell_size > 0:
            raise ValueError("cell_size must be positive")
        for c, r in self.obstacles:
            if not (0 <= c < self.width and 0 <= r < self.height):
                raise ValueError(f"obstacle cell {(c, r)} outside {self.width}x{self.height} grid")
        for name in ("start", "goal"):
            x, y = getattr(self, name)
            if not (0 <= x <= self.extent[0] and 0 <= y <= self.extent[1]):
                raise ValueError(f"{name} {(x, y)} outside the map")
            if self.cell_of((x, y)) in self.obstacles:
                raise ValueError(f"{name} lies in an obstacle cell")
        sx, sy = self.start
        gx, gy = self.goal
        half_w, half_h = self.extent[0] / 2, self.extent[1] / 2
        if not (sx <= half_w and sy <= half_h):
            raise ValueError("start must lie in the lower-left quadrant")
        if not (gx >= half_w and gy >= half_h):
            raise ValueError("goal must lie in the upper-right quadrant")

    @property
    def extent(self) -> tuple:
        return (self.width * self.cell_size, self.height * self.cell_size)

    def cell_of(self, point) -> tuple:
        col = min(int(math.floor(point[0] / self.cell_size)), self.width - 1)
        row = min(int(math.floor(point[1] / self.cell_size)), self.height - 1)
        return (col, row)

    @property
    def occupancy(self) -> np.ndarray:
        """``uint8`` array indexed ``[row, col]``, 1 for obstacles."""
        occ = np.zeros((self.height, self.width), dtype=np.uint8)
        for c, r in self.obstacles:
            occ[r, c] = 1
        return occ

    def is_connected(self) -> bool:
        """4-connected free-cell route between the start and goal cells."""
        return _connected(self.occupancy, self.cell_of(self.start), self.cell_of(self.goal))


def _connected(occ, source, target) -> bool:
    height, width = occ.shape
    seen = np.zeros_like(occ, dtype=bool)
    queue = deque([source])
    seen[source[1], source[0]] = True
    while queue:
        c, r = queue.popleft()
        if (c, r) == target:
            return True
        for dc, dr in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nc, nr = c + dc, r + dr
            if 0 <= nc < width and 0 <= nr < height and not occ[nr, nc] and not seen[nr, nc]:
                seen[nr, nc] = True
                queue.append((nc, nr))
    return False


def generate_map(
    seed: int,
    width: int = 20,
    height: int = 20,
    density: float = 0.25,
    start=(0.5, 0.5),
    goal=(19.5, 19.5),
    cell_size: float = 1.0,
    max_attempts: int = 1000,
) -> GridMap:
    """Random obstacles at ``density``, redrawn until start and goal connect."""
    if not 0.0 <= density < 1.0:
        raise ValueError("density must lie in [0, 1)")
    probe = GridMap(width, height, cell_size, frozenset(), start, goal)
    s_cell, g_cell = probe.cell_of(probe.start), probe.cell_of(probe.goal)
    rng = make_rng(seed)
    for _ in range(max_attempts):
        occ = (rng.random((height, width)) < density).astype(np.uint8)
        occ[s_cell[1], s_cell[0]] = 0
        occ[g_cell[1], g_cell[0]] = 0
        if _connected(occ, s_cell, g_cell):
            rows, cols = np.nonzero(occ)
            return GridMap(
                width, height, cell_size,
                frozenset(zip(cols.tolist(), rows.tolist())), probe.start, probe.goal,
            )
    raise MapGenerationError(
        f"no connected map after {max_attempts} attempts (seed={seed}, density={density})"
    )


_FIELDS = ("width", "height", "cell_size_m", "obstacles", "start", "goal")


def map_to_dict(grid: GridMap) -> dict:
    return {
        "width": grid.width,
        "height": grid.height,
        "cell_size_m": grid.cell_size,
        "obstacles": [list(cell) for cell in sorted(grid.obstacles)],
        "start": list(grid.start),
        "goal": list(grid.goal),
    }


def save_map(grid: GridMap, path) -> None:
    Path(path).write_text(json.dumps(map_to_dict(grid)) + "\n")


def _number(value, where, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MapFormatError(f"{where}: expected a number, got {value!r}")
    if integer and not isinstance(value, int):
        raise MapFormatError(f"{where}: expected an integer, got {value!r}")
    return value


def map_from_dict(doc, source: str = "<map>") -> GridMap:
    if not isinstance(doc, dict):
        raise MapFormatError(f"{source}: top level must be an object")
    unknown = sorted(set(doc) - set(_FIELDS))
    if unknown:
        raise MapFormatError(f"{source}: unknown field(s) {', '.join(unknown)}")
    for name in _FIELDS:
        if name not in doc:
            raise MapFormatError(f"{source}: missing field '{name}'")
    width = _number(doc["width"], f"{source}: field 'width'", integer=True)
    height = _number(doc["height"], f"{source}: field 'height'", integer=True)
    cell_size = float(_number(doc["cell_size_m"], f"{source}: field 'cell_size_m'"))
    if width < 1 or height < 1:
        raise MapFormatError(f"{source}: width and height must be positive")
    if not cell_size > 0:
        raise MapFormatError(f"{source}: field 'cell_size_m' must be positive")
    if not isinstance(doc["obstacles"], list):
        raise MapFormatError(f"{source}: field 'obstacles' must be a list")
    cells = []
    for i, item in enumerate(doc["obstacles"]):
        where = f"{source}: field 'obstacles'[{i}]"
        if not isinstance(item, list) or len(item) != 2:
            raise MapFormatError(f"{where}: expected [col, row]")
        c, r = (_number(v, where, integer=True) for v in item)
        if not (0 <= c < width and 0 <= r < height):
            raise MapFormatError(f"{where}: cell ({c}, {r}) outside {width}x{height} grid")
        cells.append((c, r))
    points = {}
    for name in ("start", "goal"):
        value = doc[name]
        if not isinstance(value, list) or len(value) != 2:
            raise MapFormatError(f"{source}: field '{name}' must be [x, y]")
        points[name] = tuple(float(_number(v, f"{source}: field '{name}'")) for v in value)
    try:
        return GridMap(width, height, cell_size, frozenset(cells), points["start"], points["goal"])
    except ValueError as exc:
        raise MapFormatError(f"{source}: {exc}") from None


def load_map(path) -> GridMap:
    path = Path(path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return map_from_dict(doc, str(path))
