"""Electrical-modularity partitioning of power grids."""

from ._core import (
    DegenerateGraphError,
    EcsAdjacency,
    Grid,
    InstanceTooLargeError,
    ModularityMatrix,
    ParseError,
    Partition,
    QuboModel,
    SingularMatrixError,
    ValidationError,
    __version__,
    anneal_discrete,
    anneal_qubo,
    build_ecs,
    build_modularity_matrix,
    build_qubo,
    compute_ptdf,
    decode,
    energy,
    exhaustive,
    load_grid,
    louvain,
    parse_grid,
    score_partition,
    solve,
    sweep_k,
)

__all__ = [
    "DegenerateGraphError",
    "EcsAdjacency",
    "Grid",
    "InstanceTooLargeError",
    "ModularityMatrix",
    "ParseError",
    "Partition",
    "QuboModel",
    "SingularMatrixError",
    "ValidationError",
    "__version__",
    "anneal_discrete",
    "anneal_qubo",
    "build_ecs",
    "build_modularity_matrix",
    "build_qubo",
    "compute_ptdf",
    "decode",
    "energy",
    "exhaustive",
    "load_grid",
    "louvain",
    "parse_grid",
    "score_partition",
    "solve",
    "sweep_k",
]
