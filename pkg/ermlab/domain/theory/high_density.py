"""
模型 2：ν_γ 的矩与高密度渐近

ν_γ(P_m) = f(0)^m + Σ_{p=2}^m γ^{p-1}/p! Σ_{φ∈Σ_{m,p}} ∫ ∏ f(y_{φ(j)} - y_{φ(j+1)}) dy₂…dy_p。
等价类大小 p! 与 1/p! 相消，每个规范代表元只积一次。
γ → ∞ 时 ν_γ(P_m) ∼ γ^{m-1} f^{*m}(0)，次阶项 I_m = γ^{m-2} Σ_{p=1}^{m-1} p f^{*p}(0) f^{*(m-p)}(0)。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ermlab.app.config import settings
from ermlab.domain.combinatorics.surjections import enumerate_surjection_classes
from ermlab.domain.exceptions import (
    CombinatoricsLimitError,
    InvalidParameterError,
    KernelPreconditionError,
)
from ermlab.domain.kernels.compact import CompactKernel
from ermlab.domain.kernels.convolution import ConvolutionSpec, convolution_power_at_zero
from ermlab.domain.kernels.level_set import LevelSetDensity
from ermlab.domain.spectra.models import SpectralSample
from ermlab.domain.theory.models import MomentMethod, MomentReport
from ermlab.domain.theory.surjection_integrals import (
    group_by_walk_shape,
    grid_walk_integral,
    qmc_walk_integral,
)

logger = logging.getLogger(__name__)


@dataclass
class SurjectionSpec:
    """满射积分配置；None 字段取全局默认"""

    steps_per_radius: Optional[int] = None
    samples_log2: Optional[int] = None
    randomizations: Optional[int] = None
    seed: int = 0
    estimate_error: bool = True
    threads: int = 1


def _class_integrals(
    f: CompactKernel, m: int, p: int, spec: SurjectionSpec
) -> Tuple[complex, float]:
    classes = enumerate_surjection_classes(m, p)
    representatives = [c.representative for c in classes]
    multiplicity = group_by_walk_shape(representatives)
    unique = sorted(multiplicity)

    if f.d == 1:
        steps = spec.steps_per_radius or settings.SURJECTION_STEPS_PER_RADIUS

        def integrate(index: int) -> Tuple[complex, float]:
            value, used = grid_walk_integral(f, representatives[index], steps)
            if not spec.estimate_error or used < 8:
                return value, 0.0
            coarse, _ = grid_walk_integral(f, representatives[index], used // 2)
            return value, float(abs(value - coarse))

    else:
        samples_log2 = spec.samples_log2 or settings.QMC_SAMPLES_LOG2
        randomizations = spec.randomizations or settings.QMC_RANDOMIZATIONS

        def integrate(index: int) -> Tuple[complex, float]:
            return qmc_walk_integral(
                f, representatives[index], samples_log2, randomizations, spec.seed + index
            )

    if spec.threads > 1 and len(unique) > 1:
        with ThreadPoolExecutor(max_workers=spec.threads) as pool:
            results = list(pool.map(integrate, unique))
    else:
        results = [integrate(index) for index in unique]

    # 按类顺序归约，串行与并行结果一致
    total = 0j
    error = 0.0
    for index, (value, err) in zip(unique, results):
        total += multiplicity[index] * value
        error += multiplicity[index] * err
    return total, error


def nu_gamma_moment(
    f: CompactKernel, gamma: float, m: int, spec: Optional[SurjectionSpec] = None
) -> MomentReport:
    """
    按满射展开计算 ν_γ(P_m)

    Args:
        f: 厄米紧支撑核
        gamma: 密度 γ > 0
        m: 阶数，1 <= m <= MAX_MOMENT_ORDER
        spec: 积分配置

    Returns:
        MomentReport：breakdown[p] 为第 p 阶贡献，coefficients[q] 为 γ^q 的系数

    Raises:
        InvalidParameterError: m < 1 或 gamma <= 0
        CombinatoricsLimitError: m 超过上限
        KernelPreconditionError: f 非厄米
    """
    if m < 1:
        raise InvalidParameterError(f"矩阶数 m 必须 >= 1，当前: {m}")
    if not gamma > 0:
        raise InvalidParameterError(f"密度 gamma 必须 > 0，当前: {gamma}")
    if m > settings.MAX_MOMENT_ORDER:
        raise CombinatoricsLimitError(m, settings.MAX_MOMENT_ORDER)
    if not f.hermitian:
        raise KernelPreconditionError(f"{f.kernel_id} 非厄米")
    spec = spec or SurjectionSpec()
    f0 = float(np.real(f.value_at_zero()))

    if m == 1:
        return MomentReport(
            m=1,
            value=f0,
            method=MomentMethod.CLOSED_FORM,
            gamma=gamma,
            breakdown={1: f0},
            coefficients={0: f0},
        )

    report = MomentReport(m=m, value=0.0, method=MomentMethod.SURJECTION_QUADRATURE, gamma=gamma)
    report.coefficients[0] = f0**m
    report.breakdown[1] = f0**m
    error = 0.0
    for p in range(2, m + 1):
        coefficient, coefficient_error = _class_integrals(f, m, p, spec)
        if abs(coefficient.imag) > 1e-8 * max(1.0, abs(coefficient.real)):
            message = f"p={p} 的积分虚部 {coefficient.imag:.3g} 不可忽略"
            logger.warning("%s m=%s: %s", f.kernel_id, m, message)
            report.warnings.append(message)
        report.coefficients[p - 1] = float(coefficient.real)
        report.breakdown[p] = float(coefficient.real) * gamma ** (p - 1)
        error += coefficient_error * gamma ** (p - 1)
        logger.debug("ν_γ(P_%s) p=%s 系数 %.8g ± %.2g", m, p, coefficient.real, coefficient_error)
    report.value = float(sum(report.breakdown.values()))
    report.error_estimate = float(error)
    logger.info("ν_γ(P_%s) = %.8g (gamma=%s, kernel=%s)", m, report.value, gamma, f.kernel_id)
    return report


def _convolution_powers(f: CompactKernel, orders: List[int], spec: Optional[ConvolutionSpec]) -> Dict[int, float]:
    return {q: convolution_power_at_zero(f, q, spec).value for q in orders}


def high_density_moment(
    f: CompactKernel, gamma: float, m: int, spec: Optional[ConvolutionSpec] = None
) -> float:
    """γ^{m-1}·f^{*m}(0)"""
    if m < 1:
        raise InvalidParameterError(f"矩阶数 m 必须 >= 1，当前: {m}")
    if m == 1:
        return float(np.real(f.value_at_zero()))
    return float(gamma ** (m - 1) * convolution_power_at_zero(f, m, spec).value)


def second_order_term(
    f: CompactKernel, gamma: float, m: int, spec: Optional[ConvolutionSpec] = None
) -> float:
    """I_m = γ^{m-2} Σ_{p=1}^{m-1} p f^{*p}(0) f^{*(m-p)}(0)"""
    if m < 2:
        raise InvalidParameterError(f"次阶项要求 m >= 2，当前: {m}")
    powers = _convolution_powers(f, list(range(1, m)), spec)
    total = sum(p * powers[p] * powers[m - p] for p in range(1, m))
    return float(gamma ** (m - 2) * total)


def second_order_term_from_level_set(density: LevelSetDensity, gamma: float, m: int) -> float:
    """I_m，其中 ∫ t^p ψ(t) dt 取自水平集直方图"""
    if m < 2:
        raise InvalidParameterError(f"次阶项要求 m >= 2，当前: {m}")
    moments = {p: density.moment(p) for p in range(1, m)}
    total = sum(p * moments[p] * moments[m - p] for p in range(1, m))
    return float(gamma ** (m - 2) * total)


def high_density_scaled_measure(
    sample: SpectralSample, gamma_n: float, edges: np.ndarray
) -> np.ndarray:
    """
    δ_n^d Σ_i 1(λ'_i/γ_n ∈ [e_j, e_{j+1}))，δ_n^d = γ_n/n

    大 γ_n 时逐箱逼近 ∫_{箱} ψ(t) dt。
    """
    if not gamma_n > 0:
        raise InvalidParameterError(f"gamma_n 必须 > 0，当前: {gamma_n}")
    edges = np.asarray(edges, dtype=float)
    scaled = sample.eigenvalues / gamma_n
    counts, _ = np.histogram(scaled, bins=edges)
    # np.histogram 最后一箱闭合，改回半开
    counts[-1] -= int(np.sum(scaled == edges[-1]))
    return counts * (gamma_n / sample.n)
