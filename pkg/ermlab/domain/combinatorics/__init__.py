from ermlab.domain.combinatorics.surjections import (
    SurjectionClass,
    enumerate_surjection_classes,
    iter_surjection_classes,
    stirling2,
    surjection_count,
)

__all__ = [
    "SurjectionClass",
    "enumerate_surjection_classes",
    "iter_surjection_classes",
    "stirling2",
    "surjection_count",
]
