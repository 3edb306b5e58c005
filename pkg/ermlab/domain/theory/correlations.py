"""
特征值相关量 M_m

M_m = ∫_{Ω^m} det Ā(x₁, …, x_m) dx，Ā 为对角线置零的 m×m 核矩阵；M₂ = -∫_Ω F(x)² dx。
推广 α_{m,k} 取 det(Ā^k) 的均值。
"""
import logging
from typing import Optional, Tuple

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError, KernelPreconditionError
from ermlab.domain.kernels.fourier import QuadratureSpec, kernel_l2_norm_sq
from ermlab.domain.kernels.periodic import PeriodicKernel
from ermlab.domain.pointset.geometry import wrap_to_torus
from ermlab.domain.spectra.statistics import RunningStatistics

logger = logging.getLogger(__name__)

_CHUNK = 1 << 16


def correlation_M2(F: PeriodicKernel, spec: Optional[QuadratureSpec] = None) -> float:
    """
    M₂ = -∫ F²

    Raises:
        KernelPreconditionError: F 为复值核
    """
    if not F.is_real:
        raise KernelPreconditionError(f"{F.kernel_id} 为复值核，M₂ 公式要求实值核")
    return -kernel_l2_norm_sq(F, spec)


def _abar_batch(F: PeriodicKernel, points: np.ndarray) -> np.ndarray:
    """points 形状 (batch, m, d) → Ā 形状 (batch, m, m)"""
    diffs = wrap_to_torus(points[:, :, None, :] - points[:, None, :, :])
    values = np.asarray(F.evaluate(diffs))
    if not F.is_real:
        values = values.astype(complex)
    m = points.shape[1]
    values[:, np.arange(m), np.arange(m)] = 0.0
    return values


def _det_power(matrices: np.ndarray, k: int) -> np.ndarray:
    if k > 1:
        matrices = np.linalg.matrix_power(matrices, k)
    return np.real(np.linalg.det(matrices))


def correlation_Mm_mc(
    F: PeriodicKernel, m: int, k: int = 1, samples: int = 1_000_000, seed: int = 0
) -> Tuple[float, float]:
    """
    det(Ā(U₁…U_m)^k) 在独立均匀 m 元组上的蒙特卡洛均值

    Returns:
        (估计值, 标准误)；k = 1 时估计 M_m

    Raises:
        InvalidParameterError: m < 2、k < 1 或 samples < 2
    """
    if m < 2 or k < 1 or samples < 2:
        raise InvalidParameterError(f"要求 m >= 2, k >= 1, samples >= 2，当前: m={m}, k={k}, samples={samples}")
    rng = np.random.default_rng(seed)
    stats = RunningStatistics()
    remaining = samples
    while remaining > 0:
        size = min(_CHUNK, remaining)
        points = rng.random((size, m, F.d)) - 0.5
        dets = _det_power(_abar_batch(F, points), k)
        chunk = RunningStatistics(
            count=size,
            mean=float(np.mean(dets)),
            m2=float(np.sum((dets - np.mean(dets)) ** 2)),
        )
        stats = stats.merge(chunk)
        remaining -= size
    logger.debug("M_%s(k=%s) 蒙特卡洛 %s 样本: %.6g ± %.2g", m, k, samples, stats.mean, stats.standard_error)
    return stats.mean, stats.standard_error


def correlation_Mm_quadrature(F: PeriodicKernel, m: int, nodes: int = 1024, k: int = 1) -> float:
    """
    张量网格求积 ∫ det Ā^k，x_m 固定为 0（平移不变），要求 d(m-1) <= 2

    Raises:
        InvalidParameterError: d(m-1) > 2 或 m < 2
    """
    if m < 2:
        raise InvalidParameterError(f"要求 m >= 2，当前: {m}")
    free = F.d * (m - 1)
    if free > 2:
        raise InvalidParameterError(f"网格求积只支持 d(m-1) <= 2，当前: {free}")
    axis = -0.5 + (np.arange(nodes) + 0.5) / nodes
    mesh = np.stack(np.meshgrid(*([axis] * free), indexing="ij"), axis=-1).reshape(-1, free)
    points = np.zeros((mesh.shape[0], m, F.d))
    points[:, : m - 1, :] = mesh.reshape(-1, m - 1, F.d)
    total = 0.0
    for start in range(0, points.shape[0], _CHUNK):
        total += float(np.sum(_det_power(_abar_batch(F, points[start : start + _CHUNK]), k)))
    return total / points.shape[0]
