"""
厄米矩阵容器

entries 构造后只读；is_real 为 True 时按实对称矩阵存储（float64）。
"""
from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """由点集与核构造的 n×n 厄米矩阵及其来源"""

    entries: np.ndarray
    is_real: bool
    provenance: Dict[str, Any] = field(default_factory=dict)
    is_hermitian: bool = True

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidParameterError(f"矩阵必须为方阵，当前形状: {arr.shape}")
        arr = np.array(arr, dtype=float if self.is_real else complex, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))

    def frobenius_sq(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2))

    def row_sums(self) -> np.ndarray:
        return np.sum(self.entries, axis=1)

    def operator_norm_bound(self) -> float:
        """max 行绝对值和，不小于谱半径"""
        return float(np.max(np.sum(np.abs(self.entries), axis=1)))
