"""Epidemic quasimetric, effective resistance, capacity and modulus on finite graphs."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    DisconnectedError,
    DuplicateEdgeError,
    Graph,
    GraphError,
    ParseError,
    SelfLoopError,
    Subgraph,
    WeightError,
    ball,
    bfs_distances,
    degree,
    diameter,
    from_adjacency,
    from_edge_list,
    induced,
    matrix_power_distances,
    read_graph,
    volume,
)
from .epidemic import EpidemicResult, discrepancy, epidemic, epidemic_density, epidemic_matrix, omega  # noqa: E402
from .electrical import effective_resistance, laplacian, spectral, unit_current_flow  # noqa: E402
from .variational import capacity, harmonic_extension, modulus, modulus_bruteforce  # noqa: E402
from .kernels import BACKEND  # noqa: E402
