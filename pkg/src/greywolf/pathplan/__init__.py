from .grid import (
    GridMap,
    MapFormatError,
    MapGenerationError,
    generate_map,
    load_map,
    map_from_dict,
    map_to_dict,
    save_map,
)
from .objective import (
    PathProblem,
    PenaltyConfig,
    count_obstacle_intersections,
    decode,
    encode,
    path_length,
    path_objective,
    segment_obstacle_cells,
)
from .oracle import OracleError, shortest_path_oracle, visibility_graph

__all__ = [
    "GridMap",
    "MapFormatError",
    "MapGenerationError",
    "OracleError",
    "PathProblem",
    "PenaltyConfig",
    "count_obstacle_intersections",
    "decode",
    "encode",
    "generate_map",
    "load_map",
    "map_from_dict",
    "map_to_dict",
    "path_length",
    "path_objective",
    "save_map",
    "segment_obstacle_cells",
    "shortest_path_oracle",
    "visibility_graph",
]
