"""
周期核（模型 1）

F 为 1-周期函数，在环面规范代表元上求值。支持的描述子：
BoxIndicator / BallIndicator / FourierSeries / PureMode / TorusDistance / Custom。
指示核采用闭条件（|x| <= r），边界零测，不影响任何积分。
"""
from abc import ABC, abstractmethod
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np
from scipy import special

from ermlab.domain.exceptions import DimensionMismatchError, InvalidParameterError
from ermlab.domain.pointset.geometry import wrap_to_torus
from ermlab.domain.pointset.models import TorusPoint

LatticePoint = Tuple[int, ...]


def ball_volume(r: float, d: int) -> float:
    """d 维欧氏球体积 π^{d/2} r^d / Γ(d/2 + 1)"""
    return float(np.pi ** (d / 2.0) * r**d / special.gamma(d / 2.0 + 1.0))


def _check_radius(r: float) -> None:
    if not (0.0 < r <= 0.5):
        raise InvalidParameterError(f"半径 r={r} 必须在 (0, 1/2] 内（支撑超出 Ω）")


class PeriodicKernel(ABC):
    """周期核基类：子类实现规范代表元上的求值，解析傅里叶系数可选"""

    name: str = "periodic"

    def __init__(self, d: int, hermitian: bool = True) -> None:
        if d < 1:
            raise InvalidParameterError(f"维度 d 必须 >= 1，当前: {d}")
        self.d = d
        self.hermitian = hermitian

    @property
    def kernel_id(self) -> str:
        return f"{self.name}(d={self.d})"

    @property
    def is_real(self) -> bool:
        """取值是否恒为实数（决定是否走实对称快速路径）"""
        return True

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """
        在任意点（形状 (..., d)）求值，先映射到规范代表元

        Raises:
            DimensionMismatchError: 最后一维与核维度不一致
        """
        arr = np.asarray(x, dtype=float)
        if arr.shape[-1] != self.d:
            raise DimensionMismatchError(self.d, arr.shape[-1])
        return self._evaluate_canonical(wrap_to_torus(arr))

    @abstractmethod
    def _evaluate_canonical(self, x: np.ndarray) -> np.ndarray:
        """x 已是规范代表元，形状 (..., d)"""

    def value_at_zero(self) -> complex:
        value = self.evaluate(np.zeros(self.d))
        return complex(value)

    def analytic_fourier(self, k: np.ndarray) -> Optional[np.ndarray]:
        """k 形状 (M, d) 的整数格点；无解析式时返回 None"""
        return None

    def analytic_l2_norm_sq(self) -> Optional[float]:
        return None

    def sup_norm(self) -> float:
        grid = np.linspace(-0.5, 0.5, 257)[:-1]
        mesh = np.stack(np.meshgrid(*([grid] * self.d), indexing="ij"), axis=-1)
        return float(np.max(np.abs(self.evaluate(mesh))))


class BoxIndicatorKernel(PeriodicKernel):
    """F(x) = 1(max_i |x_i| <= r)"""

    name = "box"

    def __init__(self, r: float, d: int = 1) -> None:
        _check_radius(r)
        super().__init__(d, hermitian=True)
        self.r = float(r)

    @property
    def kernel_id(self) -> str:
        return f"box(r={self.r:g},d={self.d})"

    def _evaluate_canonical(self, x: np.ndarray) -> np.ndarray:
        return (np.max(np.abs(x), axis=-1) <= self.r).astype(float)

    def analytic_fourier(self, k: np.ndarray) -> np.ndarray:
        # np.sinc(t) = sin(πt)/(πt)，故 sinc(2πkr) = np.sinc(2kr)
        k = np.atleast_2d(np.asarray(k, dtype=float))
        return np.prod(2.0 * self.r * np.sinc(2.0 * k * self.r), axis=-1).astype(complex)

    def analytic_l2_norm_sq(self) -> float:
        return (2.0 * self.r) ** self.d

    def sup_norm(self) -> float:
        return 1.0


class BallIndicatorKernel(PeriodicKernel):
    """F(x) = 1(‖x‖ <= r)，傅里叶系数仅走求积"""

    name = "ball"

    def __init__(self, r: float, d: int = 1) -> None:
        _check_radius(r)
        super().__init__(d, hermitian=True)
        self.r = float(r)

    @property
    def kernel_id(self) -> str:
        return f"ball(r={self.r:g},d={self.d})"

    def _evaluate_canonical(self, x: np.ndarray) -> np.ndarray:
        return (np.linalg.norm(x, axis=-1) <= self.r).astype(float)

    def analytic_l2_norm_sq(self) -> float:
        return ball_volume(self.r, self.d)

    def sup_norm(self) -> float:
        return 1.0


class FourierSeriesKernel(PeriodicKernel):
    """有限傅里叶级数 F(x) = Σ_k c_k e^{2iπk·x}"""

    name = "fourier_series"

    def __init__(self, coeffs: Mapping[LatticePoint, complex], d: int = 1) -> None:
        if not coeffs:
            raise InvalidParameterError("FourierSeries 系数不能为空")
        normalized: Dict[LatticePoint, complex] = {}
        for key, value in coeffs.items():
            lattice = tuple(int(c) for c in (key if isinstance(key, tuple) else (key,)))
            if len(lattice) != d:
                raise DimensionMismatchError(d, len(lattice), "格点维度")
            if not np.isfinite(complex(value)):
                raise InvalidParameterError(f"系数 {lattice} 非有限: {value}")
            normalized[lattice] = normalized.get(lattice, 0j) + complex(value)
        # 厄米核 F(-x) = conj(F(x)) 等价于全部系数为实数
        hermitian = all(abs(v.imag) == 0.0 for v in normalized.values())
        super().__init__(d, hermitian=hermitian)
        self.coeffs = normalized
        self._lattice = np.array(list(normalized.keys()), dtype=float)
        self._values = np.array(list(normalized.values()), dtype=complex)
        self._real = all(
            abs(normalized.get(tuple(-c for c in key), 0j) - np.conj(value)) == 0.0
            for key, value in normalized.items()
        )

    @property
    def kernel_id(self) -> str:
        return f"fourier_series(terms={len(self.coeffs)},d={self.d})"

    @property
    def is_real(self) -> bool:
        return self._real

    def _evaluate_canonical(self, x: np.ndarray) -> np.ndarray:
        phase = np.exp(2j * np.pi * np.tensordot(x, self._lattice, axes=([-1], [1])))
        values = phase @ self._values
        return values.real if self.is_real else values

    def analytic_fourier(self, k: np.ndarray) -> np.ndarray:
        k = np.atleast_2d(np.asarray(k, dtype=int))
        return np.array([self.coeffs.get(tuple(int(c) for c in row), 0j) for row in k])

    def analytic_l2_norm_sq(self) -> float:
        return float(np.sum(np.abs(self._values) ** 2))

    def sup_norm(self) -> float:
        # 有限级数的上界取系数绝对值和，与网格最大值取较小者
        return min(float(np.sum(np.abs(self._values))), super().sup_norm())


class PureModeKernel(PeriodicKernel):
    """F(x) = e^{2iπk0·x}：秩 1，特征值 n，特征向量 Φ_{k0,n}"""

    name = "pure_mode"

    def __init__(self, k: LatticePoint) -> None:
        k = tuple(int(c) for c in (k if isinstance(k, (tuple, list)) else (k,)))
        super().__init__(len(k), hermitian=True)
        self.k = k

    @property
    def kernel_id(self) -> str:
        return f"pure_mode(k={self.k})"

    @property
    def is_real(self) -> bool:
        return all(c == 0 for c in self.k)

    def _evaluate_canonical(self, x: np.ndarray) -> np.ndarray:
        return np.exp(2j * np.pi * (x @ np.asarray(self.k, dtype=float)))

    def analytic_fourier(self, k: np.ndarray) -> np.ndarray:
        k = np.atleast_2d(np.asarray(k, dtype=int))
        return np.all(k == np.asarray(self.k), axis=-1).astype(complex)

    def analytic_l2_norm_sq(self) -> float:
        return 1.0

    def sup_norm(self) -> float:
        return 1.0


class TorusDistanceKernel(PeriodicKernel):
    """F(x) = ‖x‖（环面距离），对应随机欧氏距离矩阵"""

    name = "distance"

    def __init__(self, d: int = 1) -> None:
        super().__init__(d, hermitian=True)

    def _evaluate_canonical(self, x: np.ndarray) -> np.ndarray:
        return np.linalg.norm(x, axis=-1)

    def sup_norm(self) -> float:
        return float(np.sqrt(self.d) / 2.0)


class CustomPeriodicKernel(PeriodicKernel):
    """自定义周期核：eval 在规范代表元上调用，fourier 可选"""

    name = "custom"

    def __init__(
        self,
        func: Callable[[np.ndarray], np.ndarray],
        d: int,
        hermitian: bool = True,
        real: bool = True,
        fourier: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        label: str = "custom",
    ) -> None:
        super().__init__(d, hermitian=hermitian)
        self._func = func
        self._fourier = fourier
        self._real = real
        self.label = label

    @property
    def kernel_id(self) -> str:
        return f"{self.label}(d={self.d})"

    @property
    def is_real(self) -> bool:
        return self._real

    def _evaluate_canonical(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self._func(x))

    def analytic_fourier(self, k: np.ndarray) -> Optional[np.ndarray]:
        if self._fourier is None:
            return None
        return np.asarray(self._fourier(np.atleast_2d(k)), dtype=complex)


def eval_periodic(kernel: PeriodicKernel, x: TorusPoint) -> complex:
    """单点求值：返回规范代表元处的核值"""
    return complex(kernel.evaluate(x.as_array()))


def check_hermitian(kernel: PeriodicKernel, samples: int = 64, seed: int = 0) -> bool:
    """抽样检查 F(-x) = conj(F(x))"""
    rng = np.random.default_rng(seed)
    x = rng.random((samples, kernel.d)) - 0.5
    return bool(np.allclose(kernel.evaluate(-x), np.conj(kernel.evaluate(x)), atol=1e-12))
