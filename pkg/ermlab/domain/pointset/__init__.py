from ermlab.domain.pointset.geometry import (
    pairwise_differences,
    torus_diff,
    torus_norm,
    wrap_to_torus,
)
from ermlab.domain.pointset.models import ModelKind, PointSet, TorusPoint
from ermlab.domain.pointset.sampler import (
    realization_seed,
    sample_for_scaled_model,
    sample_torus,
)

__all__ = [
    "ModelKind",
    "PointSet",
    "TorusPoint",
    "pairwise_differences",
    "realization_seed",
    "sample_for_scaled_model",
    "sample_torus",
    "torus_diff",
    "torus_norm",
    "wrap_to_torus",
]
