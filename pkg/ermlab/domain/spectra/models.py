"""
谱样本与经验测度

μ_n 约定：原子位于 λ_i/n，权重 1（总质量 n）；ν_n 约定：原子位于 λ'_i，权重 1/n（总质量 1）。
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError


class Normalization(str, Enum):
    """特征值归一化约定"""

    DIVIDED_BY_N = "divided_by_n"
    UNIT = "unit"


@dataclass(frozen=True, eq=False)
class SpectralSample:
    """一次实现的全部特征值（升序，未归一化）"""

    eigenvalues: np.ndarray
    normalization: Normalization
    provenance: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = np.sort(np.asarray(self.eigenvalues, dtype=float))
        if values.ndim != 1 or values.size < 1:
            raise InvalidParameterError(f"特征值数组形状非法: {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)

    @property
    def n(self) -> int:
        return int(self.eigenvalues.size)

    def normalized(self) -> np.ndarray:
        """DIVIDED_BY_N 返回 λ/n，UNIT 返回 λ"""
        if self.normalization == Normalization.DIVIDED_BY_N:
            return self.eigenvalues / self.n
        return self.eigenvalues


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """原子测度 Σ w_i δ_{x_i}"""

    locations: np.ndarray
    weights: np.ndarray

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    @property
    def atoms(self):
        return list(zip(self.locations.tolist(), self.weights.tolist()))
