"""
傅里叶分析：离散系数 F̂(k)、连续变换 f̂(ξ)、L2 范数

无解析式时走中点张量网格求积；中点法则本身就是一次 DFT，
全部系数由一次 FFT 得到。误差估计取网格减半（Richardson）前后的差。
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from ermlab.app.config import settings
from ermlab.domain.exceptions import DimensionMismatchError, QuadratureError
from ermlab.domain.kernels.compact import CompactKernel
from ermlab.domain.kernels.periodic import PeriodicKernel

logger = logging.getLogger(__name__)

# 倍增扫描的起始半径至少覆盖这么多个 ξ 步长
_MIN_SCAN_CELLS = 16


class QuadratureSpec(BaseModel):
    """中点张量网格求积配置"""

    nodes_per_axis: Optional[int] = Field(
        default=None, ge=8, description="每轴节点数；None 时按维度取全局默认"
    )
    richardson: bool = Field(default=True, description="是否用网格减半估计误差")

    def resolve_nodes(self, d: int) -> int:
        if self.nodes_per_axis is not None:
            return int(self.nodes_per_axis)
        if d == 1:
            return settings.QUADRATURE_NODES_1D
        if d == 2:
            return settings.QUADRATURE_NODES_2D
        return settings.QUADRATURE_NODES_ND


@dataclass
class QuadratureResult:
    """求积结果及其误差估计"""

    value: complex
    error_estimate: float
    nodes: int
    method: str

    @property
    def real(self) -> float:
        return float(np.real(self.value))


def lattice_cube(K: int, d: int) -> np.ndarray:
    """全部满足 ‖k‖_∞ <= K 的格点，形状 ((2K+1)^d, d)，按字典序排列"""
    axis = np.arange(-K, K + 1)
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _check_finite(values: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise QuadratureError(f"{what} 求积出现非有限值")


def _midpoint_axis(nodes: int, lo: float, hi: float) -> np.ndarray:
    step = (hi - lo) / nodes
    return lo + (np.arange(nodes) + 0.5) * step


def _grid_coefficients(kernel: PeriodicKernel, nodes: int, lattice: np.ndarray) -> np.ndarray:
    """中点网格上的 DFT：F̂(k) ≈ N^{-d} Σ_j F(x_j) e^{-2iπk·x_j}"""
    d = kernel.d
    axis = _midpoint_axis(nodes, -0.5, 0.5)
    mesh = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1)
    samples = np.asarray(kernel.evaluate(mesh), dtype=complex)
    _check_finite(samples, kernel.kernel_id)
    spectrum = np.fft.fftn(samples) / nodes**d
    index = tuple(np.mod(lattice[:, j], nodes) for j in range(d))
    # 网格起点 -1/2 + 1/(2N) 带来的相位
    phase = np.exp(1j * np.pi * (1.0 - 1.0 / nodes) * lattice.sum(axis=-1))
    return spectrum[index] * phase


def fourier_coefficients_on_cube(
    kernel: PeriodicKernel, K: int, spec: Optional[QuadratureSpec] = None
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    立方体 ‖k‖_∞ <= K 上的全部 F̂(k)

    Returns:
        (lattice, values, errors)：格点、系数、逐点误差估计（解析时为 0）
    """
    lattice = lattice_cube(K, kernel.d)
    analytic = kernel.analytic_fourier(lattice)
    if analytic is not None:
        return lattice, np.asarray(analytic, dtype=complex), np.zeros(len(lattice))

    spec = spec or QuadratureSpec()
    nodes = spec.resolve_nodes(kernel.d)
    if 2 * K >= nodes:
        raise QuadratureError(f"截断 K={K} 超过网格可分辨范围（每轴 {nodes} 节点）")
    values = _grid_coefficients(kernel, nodes, lattice)
    errors = np.full(len(lattice), np.inf)
    if spec.richardson:
        half = nodes // 2
        coarse_ok = np.max(np.abs(lattice), axis=-1) * 2 < half
        if np.any(coarse_ok):
            coarse = _grid_coefficients(kernel, half, lattice[coarse_ok])
            errors[coarse_ok] = np.abs(values[coarse_ok] - coarse)
    logger.debug("求积计算 %s 的 %d 个傅里叶系数（每轴 %d 节点）", kernel.kernel_id, len(lattice), nodes)
    return lattice, values, errors


def fourier_coefficient(
    kernel: PeriodicKernel,
    k: Union[int, Tuple[int, ...], np.ndarray],
    spec: Optional[QuadratureSpec] = None,
) -> QuadratureResult:
    """
    单个离散傅里叶系数 F̂(k) = ∫_Ω F(x) e^{-2iπk·x} dx

    Raises:
        DimensionMismatchError: k 维度与核不一致
        QuadratureError: 求积出现非有限值
    """
    lattice = np.atleast_2d(np.asarray(k, dtype=int).reshape(-1))
    if lattice.shape[1] != kernel.d:
        raise DimensionMismatchError(kernel.d, lattice.shape[1], "格点维度")
    analytic = kernel.analytic_fourier(lattice)
    if analytic is not None:
        return QuadratureResult(complex(analytic[0]), 0.0, 0, "analytic")

    spec = spec or QuadratureSpec()
    nodes = spec.resolve_nodes(kernel.d)
    value = _grid_coefficients(kernel, nodes, lattice)[0]
    error = float("inf")
    if spec.richardson and 4 * int(np.max(np.abs(lattice))) < nodes:
        error = float(abs(value - _grid_coefficients(kernel, nodes // 2, lattice)[0]))
    return QuadratureResult(complex(value), error, nodes, "midpoint")


def kernel_l2_norm_sq(kernel: PeriodicKernel, spec: Optional[QuadratureSpec] = None) -> float:
    """∫_Ω |F(x)|² dx，能解析时直接返回"""
    analytic = kernel.analytic_l2_norm_sq()
    if analytic is not None:
        return float(analytic)
    spec = spec or QuadratureSpec()
    nodes = spec.resolve_nodes(kernel.d)
    axis = _midpoint_axis(nodes, -0.5, 0.5)
    mesh = np.stack(np.meshgrid(*([axis] * kernel.d), indexing="ij"), axis=-1)
    samples = np.abs(np.asarray(kernel.evaluate(mesh))) ** 2
    _check_finite(samples, kernel.kernel_id)
    return float(np.mean(samples))


def _compact_transform_quadrature(kernel: CompactKernel, xi: np.ndarray, nodes: int) -> complex:
    R = kernel.support_radius
    axis = _midpoint_axis(nodes, -R, R)
    mesh = np.stack(np.meshgrid(*([axis] * kernel.d), indexing="ij"), axis=-1)
    samples = np.asarray(kernel.evaluate(mesh), dtype=complex)
    _check_finite(samples, kernel.kernel_id)
    phase = np.exp(-2j * np.pi * (mesh @ xi))
    cell = (2.0 * R / nodes) ** kernel.d
    return complex(np.sum(samples * phase) * cell)


def fourier_transform(
    kernel: CompactKernel, xi: Union[float, np.ndarray], spec: Optional[QuadratureSpec] = None
) -> QuadratureResult:
    """
    全空间傅里叶变换 f̂(ξ) = ∫_{R^d} f(x) e^{-2iπξ·x} dx

    Raises:
        DimensionMismatchError: ξ 维度与核不一致
        QuadratureError: 求积出现非有限值
    """
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if xi.shape[0] != kernel.d:
        raise DimensionMismatchError(kernel.d, xi.shape[0])
    analytic = kernel.analytic_transform(xi)
    if analytic is not None:
        return QuadratureResult(complex(analytic), 0.0, 0, "analytic")
    spec = spec or QuadratureSpec()
    nodes = spec.resolve_nodes(kernel.d)
    value = _compact_transform_quadrature(kernel, xi, nodes)
    error = float("inf")
    if spec.richardson:
        error = abs(value - _compact_transform_quadrature(kernel, xi, nodes // 2))
    return QuadratureResult(value, float(error), nodes, "midpoint")


def fourier_transform_grid(
    kernel: CompactKernel, xi_cutoff: float, xi_step: float
) -> Tuple[np.ndarray, np.ndarray]:
    """
    f̂ 在均匀 ξ 网格 {k·step : -N/2 <= k < N/2}^d 上的取值，N = 2·cutoff/step

    无解析式时用补零 FFT：在长度 L = 1/step 的盒子上采样 f，频率步长恰为 1/L。

    Returns:
        (axis, values)：单轴坐标与形状 (N,)*d 的取值数组
    """
    half = int(np.ceil(xi_cutoff / xi_step))
    nodes = 2 * half
    axis = np.arange(-half, half) * xi_step
    if kernel.analytic_transform(np.zeros(kernel.d)) is not None:
        mesh = np.stack(np.meshgrid(*([axis] * kernel.d), indexing="ij"), axis=-1)
        values = kernel.analytic_transform(mesh)
        _check_finite(values, kernel.kernel_id)
        return axis, values

    length = 1.0 / xi_step
    h = length / nodes
    if length < 2.0 * kernel.support_radius:
        raise QuadratureError(f"ξ 步长 {xi_step} 过大，采样盒子装不下支撑")
    x_axis = -length / 2.0 + np.arange(nodes) * h
    mesh = np.stack(np.meshgrid(*([x_axis] * kernel.d), indexing="ij"), axis=-1)
    samples = np.asarray(kernel.evaluate(mesh), dtype=complex)
    _check_finite(samples, kernel.kernel_id)
    spectrum = np.fft.fftshift(np.fft.fftn(samples)) * h**kernel.d
    # 采样起点 -L/2 带来的相位 e^{iπk}，逐轴相乘
    sign = np.where(np.arange(-half, half) % 2 == 0, 1.0, -1.0)
    for j in range(kernel.d):
        shape = [1] * kernel.d
        shape[j] = nodes
        spectrum = spectrum * sign.reshape(shape)
    return axis, spectrum


def default_xi_grid(d: int) -> Tuple[float, float]:
    """按维度给出 (ξ 截断上限, ξ 步长) 的全局默认值"""
    if d == 1:
        return settings.XI_CUTOFF_MAX_1D, settings.LEVEL_SET_GRID_STEP_1D
    return settings.XI_CUTOFF_MAX_2D, settings.LEVEL_SET_GRID_STEP_2D


def choose_xi_cutoff(
    kernel: CompactKernel,
    eps0: float,
    xi_step: Optional[float] = None,
    xi_cutoff_max: Optional[float] = None,
) -> Tuple[float, float]:
    """
    选择 ξ 截断：半径从 1 起倍增，直到外半壳 cutoff/2 <= ‖ξ‖_∞ <= cutoff 上 max|f̂| < eps0 或到达上限，
    再取该网格上最外侧满足 |f̂| >= eps0 的点

    Returns:
        (cutoff, tail_max)：截断半径，以及停止时外半壳上的 max|f̂|
        （tail_max >= eps0 说明上限不足，会记录告警）
    """
    default_max, default_step = default_xi_grid(kernel.d)
    step = xi_step or default_step
    cap = xi_cutoff_max or default_max
    scan = min(cap, max(1.0, _MIN_SCAN_CELLS * step))
    while True:
        axis, values = fourier_transform_grid(kernel, scan, step)
        mesh = np.stack(np.meshgrid(*([axis] * kernel.d), indexing="ij"), axis=-1)
        radius = np.max(np.abs(mesh), axis=-1)
        magnitude = np.abs(values)
        shell = radius >= 0.5 * scan
        tail_max = float(np.max(magnitude[shell])) if np.any(shell) else 0.0
        if tail_max < eps0 or scan >= cap:
            break
        scan = min(2.0 * scan, cap)
    logger.debug("ξ 倍增扫描停在 %s，外半壳 max|f̂|=%.3g（%s）", scan, tail_max, kernel.kernel_id)

    above = magnitude >= eps0
    cutoff = float(np.max(radius[above])) + step if np.any(above) else step
    cutoff = min(cutoff, scan)
    if tail_max >= eps0:
        logger.warning(
            "ξ 截断上限 %s 不足：外层 max|f̂|=%.3g >= eps0=%.3g（%s）",
            cap,
            tail_max,
            eps0,
            kernel.kernel_id,
        )
    return cutoff, tail_max
