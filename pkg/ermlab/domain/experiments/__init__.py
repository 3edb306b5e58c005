"""
实验层：配置、核构造、研究与运行器
"""
from ermlab.domain.experiments.config import (
    COMMANDS,
    Diagnostic,
    ExperimentConfig,
    ExperimentConfigLoader,
    KernelSpec,
    ModelSpec,
    ToleranceSpec,
    validate,
)
from ermlab.domain.experiments.kernel_factory import build_compact_kernel, build_kernel_for, build_periodic_kernel
from ermlab.domain.experiments.manifest import RECORD_COLUMNS, ResultManifest, ResultRecord, StudyResult
from ermlab.domain.experiments.runner import ExperimentRunner, run

__all__ = [
    "COMMANDS",
    "Diagnostic",
    "ExperimentConfig",
    "ExperimentConfigLoader",
    "KernelSpec",
    "ModelSpec",
    "ToleranceSpec",
    "validate",
    "build_compact_kernel",
    "build_kernel_for",
    "build_periodic_kernel",
    "RECORD_COLUMNS",
    "ResultManifest",
    "ResultRecord",
    "StudyResult",
    "ExperimentRunner",
    "run",
]
