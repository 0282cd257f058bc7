"""Shortest-path lower bound via a visibility graph over obstacle corners.

Nodes are the start, the goal and every convex corner of the obstacle cells.
An edge is admissible when the straight segment stays out of every obstacle
interior; running along an obstacle edge or through a corner is allowed.
Collision-free paths must keep away from closed obstacle cells, so the graph
distance is a lower bound on (and the infimum of) their lengths.
"""

from __future__ import annotations

import itertools
import math

import networkx as nx
import shapely
from shapely.geometry import LineString, box
from shapely.ops import unary_union

from .grid import GridMap


class OracleError(RuntimeError):
    pass


_INTERIOR_EPS = 1e-9


def _convex_corners(grid: GridMap):
    obstacles = grid.obstacles
    s = grid.cell_size
    corners = set()
    for vx in range(grid.width + 1):
        for vy in range(grid.height + 1):
            around = [(vx - 1, vy - 1), (vx, vy - 1), (vx - 1, vy), (vx, vy)]
            blocked = [cell in obstacles for cell in around]
            k = sum(blocked)
            # one blocked cell: convex corner; two diagonal ones: pinch point
            if k == 1 or (k == 2 and blocked[0] == blocked[3]):
                corners.add((vx * s, vy * s))
    return sorted(corners)


def visibility_graph(grid: GridMap) -> nx.Graph:
    s = grid.cell_size
    cells = [box(c * s, r * s, (c + 1) * s, (r + 1) * s) for c, r in sorted(grid.obstacles)]
    graph = nx.Graph()
    nodes = [grid.start, grid.goal] + _convex_corners(grid)
    graph.add_nodes_from(nodes)
    if not cells:
        for p, q in itertools.combinations(nodes, 2):
            graph.add_edge(p, q, weight=math.dist(p, q))
        return graph
    # shrinking by a hair turns "intersects" into "meets the interior"
    interior = unary_union(cells).buffer(-_INTERIOR_EPS * s, join_style="mitre")
    shapely.prepare(interior)
    for p, q in itertools.combinations(nodes, 2):
        if not interior.intersects(LineString([p, q])):
            graph.add_edge(p, q, weight=math.dist(p, q))
    return graph


def shortest_path_oracle(grid: GridMap, return_path: bool = False):
    """Length in metres of the shortest obstacle-avoiding polyline."""
    if not grid.is_connected():
        raise OracleError("start and goal are not connected")
    graph = visibility_graph(grid)
    try:
        length, path = nx.single_source_dijkstra(graph, grid.start, grid.goal, weight="weight")
    except nx.NetworkXNoPath:
        raise OracleError("no visibility path between start and goal") from None
    return (length, path) if return_path else length
