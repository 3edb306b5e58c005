from ermlab.domain.matrices.builders import (
    AdjacencyScale,
    build_A,
    build_Abar,
    build_B,
    build_geometric_adjacency,
    build_u_deformed,
)
from ermlab.domain.matrices.models import HermitianMatrix

__all__ = [
    "AdjacencyScale",
    "HermitianMatrix",
    "build_A",
    "build_Abar",
    "build_B",
    "build_geometric_adjacency",
    "build_u_deformed",
]
