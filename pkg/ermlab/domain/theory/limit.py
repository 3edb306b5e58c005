"""
模型 1 的极限测度 μ 及其矩

μ(P_m) = Σ_k F̂(k)^m；有限 n 修正
n(E μ_n(P_m) - μ(P_m)) → Σ_{q=1}^{m-1} q μ(P_q) μ(P_{m-q}) - m(m-1)/2 μ(P_m)。
"""
import logging
from typing import Optional, Tuple

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError
from ermlab.domain.kernels.fourier import (
    QuadratureSpec,
    fourier_coefficients_on_cube,
    kernel_l2_norm_sq,
)
from ermlab.domain.kernels.periodic import PeriodicKernel
from ermlab.domain.theory.models import AtomicMeasure, MomentMethod, MomentReport

logger = logging.getLogger(__name__)

# m = 1 时外半截立方体上 Σ|F̂| 占比超过该值即视为截断处不绝对可和
_SUMMABILITY_RATIO = 0.01


def limit_measure(F: PeriodicKernel, K: int, spec: Optional[QuadratureSpec] = None) -> AtomicMeasure:
    """
    ‖k‖_∞ <= K 上的全部原子 F̂(k) 与 Parseval 余项

    Raises:
        InvalidParameterError: K < 0
    """
    if K < 0:
        raise InvalidParameterError(f"截断 K 必须 >= 0，当前: {K}")
    lattice, values, _ = fourier_coefficients_on_cube(F, K, spec)
    if F.hermitian:
        values = np.real(values)
    l2 = kernel_l2_norm_sq(F, spec)
    tail = max(0.0, l2 - float(np.sum(np.abs(values) ** 2)))
    return AtomicMeasure(lattice=lattice, values=values, cutoff=K, tail_bound=tail, l2_norm_sq=l2)


def mu_moment(
    F: PeriodicKernel, m: int, K: int, spec: Optional[QuadratureSpec] = None
) -> MomentReport:
    """
    截断和 Σ_{‖k‖<=K} F̂(k)^m

    error_estimate：m >= 2 时为 tail_bound·(外壳 max|F̂|)^{m-2}；m = 1 时为 K 与 K/2 两个部分和之差。

    Raises:
        InvalidParameterError: m < 1
    """
    if m < 1:
        raise InvalidParameterError(f"矩阶数 m 必须 >= 1，当前: {m}")
    measure = limit_measure(F, K, spec)
    value = complex(np.sum(measure.values.astype(complex) ** m))
    analytic = F.analytic_fourier(np.zeros((1, F.d), dtype=int)) is not None
    method = MomentMethod.CLOSED_FORM if analytic else MomentMethod.LATTICE_SUM
    report = MomentReport(m=m, value=float(value.real), method=method)

    if m >= 2:
        report.error_estimate = measure.tail_bound * measure.shell_max(K) ** (m - 2)
    else:
        radius = np.max(np.abs(measure.lattice), axis=-1)
        inner = radius <= K // 2
        report.error_estimate = float(abs(np.sum(measure.values[~inner])))
        total_abs = float(np.sum(np.abs(measure.values)))
        outer_abs = float(np.sum(np.abs(measure.values[~inner])))
        if total_abs > 0 and outer_abs / total_abs > _SUMMABILITY_RATIO:
            message = (
                f"{F.kernel_id} 的傅里叶系数在 K={K} 处不绝对可和"
                f"（外半截 Σ|F̂| 占比 {outer_abs / total_abs:.3g}），μ(P₁) 为条件收敛的对称部分和"
            )
            logger.warning(message)
            report.warnings.append(message)
    if abs(value.imag) > 1e-9 * max(1.0, abs(value.real)):
        report.warnings.append(f"Σ F̂^m 虚部 {value.imag:.3g} 不可忽略")
    return report


def finite_size_correction(
    F: PeriodicKernel, m: int, K: int, spec: Optional[QuadratureSpec] = None
) -> float:
    """
    Σ_{q=1}^{m-1} q μ(P_q) μ(P_{m-q}) - m(m-1)/2 μ(P_m)

    Raises:
        InvalidParameterError: m < 2
    """
    if m < 2:
        raise InvalidParameterError(f"有限规模修正要求 m >= 2，当前: {m}")
    moments = {q: mu_moment(F, q, K, spec).value for q in range(2, m + 1)}
    # μ(P₁) = Σ_k F̂(k) = F(0)，不用条件收敛的部分和
    moments[1] = float(complex(F.value_at_zero()).real)
    cross = sum(q * moments[q] * moments[m - q] for q in range(1, m))
    return float(cross - m * (m - 1) / 2.0 * moments[m])


def expected_mu_n_second_moment(F: PeriodicKernel, n: int, spec: Optional[QuadratureSpec] = None) -> float:
    """E μ_n(P₂) = |F(0)|²/n + (n-1)/n·∫|F|²，对每个 n 精确成立"""
    if n < 1:
        raise InvalidParameterError(f"n 必须 >= 1，当前: {n}")
    f0 = abs(F.value_at_zero()) ** 2
    return float(f0 / n + (n - 1) / n * kernel_l2_norm_sq(F, spec))


def box_spectral_gap(r: float, d: int = 1) -> Tuple[float, float]:
    """
    盒核 1(‖x‖_∞ <= r) 的极限谱间隙 F̂(0) - F̂(e₁) 及其小 r 渐近

    Returns:
        (exact, asymptotic)：(2r)^d (1 - sin(2πr)/(2πr)) 与 (2r)^d (2πr)²/6
    """
    if not (0.0 < r <= 0.5):
        raise InvalidParameterError(f"半径 r={r} 必须在 (0, 1/2] 内")
    scale = (2.0 * r) ** d
    exact = scale * (1.0 - float(np.sinc(2.0 * r)))
    asymptotic = scale * (2.0 * np.pi * r) ** 2 / 6.0
    return float(exact), float(asymptotic)


def positivity_certificate(
    F: PeriodicKernel, K: int, spec: Optional[QuadratureSpec] = None, tol: float = 0.0
) -> Tuple[bool, float, Tuple[int, ...]]:
    """
    检查 ‖k‖_∞ <= K 上 F̂(k) >= -tol（A 半正定的截断判据）

    Returns:
        (是否全部非负, 最小值, 取到最小值的格点)
    """
    measure = limit_measure(F, K, spec)
    values = np.real(measure.values)
    index = int(np.argmin(values))
    minimum = float(values[index])
    return minimum >= -tol, minimum, tuple(int(c) for c in measure.lattice[index])
