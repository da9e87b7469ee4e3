"""Exact classification of the atoms of graph products of von Neumann algebras."""

from .atoms import (
    AtomReport,
    MeetReport,
    Summand,
    VertexAlgebraSpec,
    classify_selection,
    enumerate_atoms,
    projection_meet,
    s_value,
    truncated_series_crosscheck,
)
from .cliquepoly import CliquePolynomial, join_factorization_check, restrict_zeros
from .errors import CapExceeded, DomainError
from .graph import (
    Graph,
    complete_graph,
    edgeless_graph,
    enumerate_cliques,
    induced_subgraph,
    join_decomposition,
    neighborhood_subgraph,
    path_graph,
)
from .region import classify_boundary_point, membership, membership_corner_oracle, rho

__all__ = [
    "AtomReport", "CapExceeded", "CliquePolynomial", "DomainError", "Graph", "MeetReport",
    "Summand", "VertexAlgebraSpec", "classify_boundary_point", "classify_selection",
    "complete_graph", "edgeless_graph", "enumerate_atoms", "enumerate_cliques",
    "induced_subgraph", "join_decomposition", "join_factorization_check", "membership",
    "membership_corner_oracle", "neighborhood_subgraph", "path_graph", "projection_meet",
    "restrict_zeros", "rho", "s_value", "truncated_series_crosscheck",
]
