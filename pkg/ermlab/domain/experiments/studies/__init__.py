"""
研究注册表：命令名 -> 研究类
"""
from typing import Dict, List, Type

from ermlab.domain.exceptions import UnknownCommandError
from ermlab.domain.experiments.studies.base import BaseStudy
from ermlab.domain.experiments.studies.correlations import CorrelationsStudy
from ermlab.domain.experiments.studies.density_sweep import DensitySweepStudy
from ermlab.domain.experiments.studies.eigenvector_residual import EigenvectorResidualStudy
from ermlab.domain.experiments.studies.level_set import LevelSetStudy
from ermlab.domain.experiments.studies.measure_compare import MeasureCompareStudy
from ermlab.domain.experiments.studies.moment_convergence import MomentConvergenceStudy
from ermlab.domain.experiments.studies.poisson_bound import PoissonBoundStudy
from ermlab.domain.experiments.studies.spectrum import SpectrumStudy

_STUDY_REGISTRY: Dict[str, Type[BaseStudy]] = {
    study.command: study
    for study in (
        SpectrumStudy,
        MeasureCompareStudy,
        MomentConvergenceStudy,
        DensitySweepStudy,
        PoissonBoundStudy,
        EigenvectorResidualStudy,
        CorrelationsStudy,
        LevelSetStudy,
    )
}


def get_study_class(command: str) -> Type[BaseStudy]:
    """
    按命令名取研究类

    Raises:
        UnknownCommandError: 命令未注册
    """
    study = _STUDY_REGISTRY.get(command)
    if study is None:
        raise UnknownCommandError(command, list_commands())
    return study


def list_commands() -> List[str]:
    return list(_STUDY_REGISTRY.keys())


__all__ = [
    "BaseStudy",
    "get_study_class",
    "list_commands",
    "SpectrumStudy",
    "MeasureCompareStudy",
    "MomentConvergenceStudy",
    "DensitySweepStudy",
    "PoissonBoundStudy",
    "EigenvectorResidualStudy",
    "CorrelationsStudy",
    "LevelSetStudy",
]
