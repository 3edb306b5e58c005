"""
卷积幂 f^{*m}(0)

两条独立路线：有界支撑上的直接迭代卷积；截断 ξ 网格上的 ∫ f̂(ξ)^m dξ。
盒核另有 Irwin–Hall 闭式。两条路线偏差超过容差时在结果里带告警，不静默。
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import signal

from ermlab.app.config import settings
from ermlab.domain.exceptions import InvalidParameterError, KernelPreconditionError
from ermlab.domain.kernels.compact import CompactKernel
from ermlab.domain.kernels.fourier import default_xi_grid, fourier_transform_grid

logger = logging.getLogger(__name__)


@dataclass
class ConvolutionSpec:
    """卷积幂计算配置"""

    steps_per_radius: Optional[int] = None
    xi_cutoff: Optional[float] = None
    xi_step: Optional[float] = None
    tolerance: Optional[float] = None


@dataclass
class ConvolutionPowerResult:
    """f^{*m}(0) 的两条路线结果"""

    m: int
    direct: float
    spectral: float
    discrepancy: float
    tolerance: float
    closed_form: Optional[float] = None
    warning: Optional[str] = None

    @property
    def value(self) -> float:
        """优先闭式，其次直接卷积"""
        return self.closed_form if self.closed_form is not None else self.direct


def _direct_route(kernel: CompactKernel, m: int, steps_per_radius: int) -> float:
    R = kernel.support_radius
    steps = steps_per_radius
    if kernel.d == 2:
        steps = min(steps, 128)
    elif kernel.d >= 3:
        steps = min(steps, 24)
    h = R / steps
    axis = np.arange(-steps, steps + 1) * h
    mesh = np.stack(np.meshgrid(*([axis] * kernel.d), indexing="ij"), axis=-1)
    base = np.asarray(kernel.evaluate(mesh), dtype=complex if not kernel.is_real else float)
    power = base
    for _ in range(m - 2):
        power = signal.fftconvolve(power, base, mode="full") * h**kernel.d
    # f^{*m}(0) = ∫ f^{*(m-1)}(y) f(-y) dy；power 的中心即 y = 0
    center = tuple(s // 2 for s in power.shape)
    flipped = base[tuple(slice(None, None, -1) for _ in range(kernel.d))]
    window = tuple(slice(c - steps, c + steps + 1) for c in center)
    value = np.sum(power[window] * flipped) * h**kernel.d
    return float(np.real(value))


def _spectral_route(kernel: CompactKernel, m: int, xi_cutoff: float, xi_step: float) -> float:
    _, values = fourier_transform_grid(kernel, xi_cutoff, xi_step)
    return float(np.real(np.sum(np.asarray(values) ** m)) * xi_step**kernel.d)


def convolution_power_at_zero(
    kernel: CompactKernel, m: int, spec: Optional[ConvolutionSpec] = None
) -> ConvolutionPowerResult:
    """
    计算 f^{*m}(0)，返回两条路线及其偏差

    Raises:
        InvalidParameterError: m < 1
        KernelPreconditionError: 核非厄米
    """
    if m < 1:
        raise InvalidParameterError(f"卷积幂阶数 m 必须 >= 1，当前: {m}")
    if not kernel.hermitian:
        raise KernelPreconditionError(f"{kernel.kernel_id} 非厄米")
    spec = spec or ConvolutionSpec()
    default_cutoff, default_step = default_xi_grid(kernel.d)
    tolerance = spec.tolerance if spec.tolerance is not None else settings.QUADRATURE_TOLERANCE_REL
    closed_form = kernel.analytic_convolution_power_at_zero(m)

    if m == 1:
        direct = float(np.real(kernel.value_at_zero()))
    else:
        direct = _direct_route(
            kernel, m, spec.steps_per_radius or settings.CONVOLUTION_STEPS_PER_RADIUS
        )
    spectral = _spectral_route(
        kernel, m, spec.xi_cutoff or default_cutoff, spec.xi_step or default_step
    )
    scale = max(abs(direct), abs(spectral), 1e-300)
    discrepancy = abs(direct - spectral) / scale

    warning = None
    if discrepancy > tolerance:
        warning = f"直接卷积 {direct:.6g} 与谱积分 {spectral:.6g} 相对偏差 {discrepancy:.3g} 超过容差 {tolerance}"
        logger.warning("%s m=%s: %s", kernel.kernel_id, m, warning)
    return ConvolutionPowerResult(
        m=m,
        direct=direct,
        spectral=spectral,
        discrepancy=discrepancy,
        tolerance=tolerance,
        closed_form=closed_form,
        warning=warning,
    )
