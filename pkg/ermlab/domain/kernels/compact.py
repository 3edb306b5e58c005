"""
紧支撑核（模型 2）

f 的支撑包含于 Ω，f̂ 采用全空间约定 ∫_{R^d} f(x) e^{-2iπξ·x} dx；
盒核的解析值为 (2r)^d ∏ sinc(2πξ_j r)。
"""
from abc import ABC, abstractmethod
from math import comb, factorial
from typing import Callable, Optional

import numpy as np

from ermlab.domain.exceptions import DimensionMismatchError, InvalidParameterError
from ermlab.domain.kernels.periodic import ball_volume


def irwin_hall_density(m: int, x: float) -> float:
    """m 个 U(0,1) 之和在 x 处的密度"""
    if x < 0 or x > m:
        return 0.0
    total = sum((-1) ** k * comb(m, k) * (x - k) ** (m - 1) for k in range(int(np.floor(x)) + 1))
    return float(total / factorial(m - 1))


class CompactKernel(ABC):
    """紧支撑核基类，support_radius 为满足 supp f ⊆ [-R, R]^d 的最小 R"""

    name: str = "compact"

    def __init__(self, d: int, support_radius: float, hermitian: bool = True) -> None:
        if d < 1:
            raise InvalidParameterError(f"维度 d 必须 >= 1，当前: {d}")
        if not (0.0 < support_radius <= 0.5):
            raise InvalidParameterError(
                f"支撑半径 {support_radius} 必须在 (0, 1/2] 内（支撑超出 Ω）"
            )
        self.d = d
        self.support_radius = float(support_radius)
        self.hermitian = hermitian

    @property
    def kernel_id(self) -> str:
        return f"{self.name}(d={self.d})"

    @property
    def is_real(self) -> bool:
        return True

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """
        在形状 (..., d) 的点上求值（不做周期映射），支撑外为 0

        Raises:
            DimensionMismatchError: 最后一维与核维度不一致
        """
        arr = np.asarray(x, dtype=float)
        if arr.shape[-1] != self.d:
            raise DimensionMismatchError(self.d, arr.shape[-1])
        values = np.asarray(self._evaluate(arr))
        inside = np.max(np.abs(arr), axis=-1) <= self.support_radius
        return np.where(inside, values, 0.0)

    @abstractmethod
    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        pass

    def value_at_zero(self) -> complex:
        return complex(self.evaluate(np.zeros(self.d)))

    def analytic_transform(self, xi: np.ndarray) -> Optional[np.ndarray]:
        """ξ 形状 (..., d)；无解析式时返回 None"""
        return None

    def analytic_convolution_power_at_zero(self, m: int) -> Optional[float]:
        return None

    def analytic_l2_norm_sq(self) -> Optional[float]:
        return None

    def sup_norm(self) -> float:
        grid = np.linspace(-self.support_radius, self.support_radius, 201)
        mesh = np.stack(np.meshgrid(*([grid] * self.d), indexing="ij"), axis=-1)
        return float(np.max(np.abs(self.evaluate(mesh))))


class CompactBoxKernel(CompactKernel):
    """f(x) = 1(max_i |x_i| <= r)"""

    name = "box"

    def __init__(self, r: float, d: int = 1) -> None:
        super().__init__(d, support_radius=r, hermitian=True)
        self.r = float(r)

    @property
    def kernel_id(self) -> str:
        return f"box(r={self.r:g},d={self.d})"

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.ones(x.shape[:-1])

    def analytic_transform(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        return np.prod(2.0 * self.r * np.sinc(2.0 * xi * self.r), axis=-1)

    def analytic_convolution_power_at_zero(self, m: int) -> float:
        # 一维：m 个 U(-r, r) 之和在 0 处的密度乘 (2r)^m；各坐标独立相乘
        one_dim = (2.0 * self.r) ** (m - 1) * irwin_hall_density(m, m / 2.0)
        return float(one_dim**self.d)

    def analytic_l2_norm_sq(self) -> float:
        return (2.0 * self.r) ** self.d

    def sup_norm(self) -> float:
        return 1.0


class CompactBallKernel(CompactKernel):
    """f(x) = 1(‖x‖ <= r)，变换仅走求积"""

    name = "ball"

    def __init__(self, r: float, d: int = 1) -> None:
        super().__init__(d, support_radius=r, hermitian=True)
        self.r = float(r)

    @property
    def kernel_id(self) -> str:
        return f"ball(r={self.r:g},d={self.d})"

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        return (np.linalg.norm(x, axis=-1) <= self.r).astype(float)

    def analytic_l2_norm_sq(self) -> float:
        return ball_volume(self.r, self.d)

    def sup_norm(self) -> float:
        return 1.0


class CustomCompactKernel(CompactKernel):
    """自定义紧支撑核"""

    name = "custom"

    def __init__(
        self,
        func: Callable[[np.ndarray], np.ndarray],
        d: int,
        support_radius: float,
        hermitian: bool = True,
        real: bool = True,
        transform: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        label: str = "custom",
    ) -> None:
        super().__init__(d, support_radius=support_radius, hermitian=hermitian)
        self._func = func
        self._transform = transform
        self._real = real
        self.label = label

    @property
    def kernel_id(self) -> str:
        return f"{self.label}(d={self.d})"

    @property
    def is_real(self) -> bool:
        return self._real

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        return self._func(x)

    def analytic_transform(self, xi: np.ndarray) -> Optional[np.ndarray]:
        if self._transform is None:
            return None
        return np.asarray(self._transform(np.asarray(xi, dtype=float)))
