"""
点集数据模型

TorusPoint：单位环面 [-1/2, 1/2)^d 上的点；PointSet：一次实现的 n 个点及其来源。
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError


class ModelKind(str, Enum):
    """矩阵模型：环面模型（A）或缩放立方体模型（B_n）"""

    TORUS = "torus"
    SCALED_CUBE = "scaled_cube"


@dataclass(frozen=True)
class TorusPoint:
    """环面上的点，坐标取规范代表元 [-1/2, 1/2)"""

    coords: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 1:
            raise InvalidParameterError("TorusPoint 维度必须 >= 1")
        for c in self.coords:
            if not (-0.5 <= c < 0.5):
                raise InvalidParameterError(f"坐标 {c} 不在 [-1/2, 1/2) 内")

    @property
    def d(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True, eq=False)
class PointSet:
    """
    一次实现的点集（构造后不可变，可在并发任务间共享）

    coords 为 (n, d) 只读数组；ScaledCube 模型记录 delta = (gamma/n)^{1/d}。
    """

    coords: np.ndarray
    seed: int
    model: ModelKind = ModelKind.TORUS
    delta: Optional[float] = None
    gamma: Optional[float] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        arr = np.array(self.coords, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidParameterError(f"点集坐标形状非法: {arr.shape}")
        if np.any(arr < -0.5) or np.any(arr >= 0.5):
            raise InvalidParameterError("点集坐标必须位于 [-1/2, 1/2)")
        if self.model == ModelKind.SCALED_CUBE:
            if self.delta is None or not (0.0 < self.delta <= 1.0):
                raise InvalidParameterError(f"ScaledCube 模型要求 delta ∈ (0, 1]，当前: {self.delta}")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @property
    def n(self) -> int:
        return int(self.coords.shape[0])

    @property
    def d(self) -> int:
        return int(self.coords.shape[1])

    @property
    def points(self) -> List[TorusPoint]:
        return [TorusPoint(tuple(float(c) for c in row)) for row in self.coords]

    @property
    def model_tag(self) -> str:
        if self.model == ModelKind.SCALED_CUBE:
            return f"scaled_cube(delta={self.delta:.6g})"
        return "torus"
