"""
经验测度上的计数、矩、谱半径与谱间隙
区间一律半开 [a, b)。
"""
import numpy as np

from ermlab.domain.exceptions import InvalidParameterError
from ermlab.domain.spectra.models import EmpiricalMeasure, Normalization, SpectralSample


def empirical_measure(sample: SpectralSample) -> EmpiricalMeasure:
    """μ_n：原子 λ_i/n、权重 1；ν_n：原子 λ'_i、权重 1/n"""
    locations = sample.normalized()
    if sample.normalization == Normalization.DIVIDED_BY_N:
        weights = np.ones(sample.n)
    else:
        weights = np.full(sample.n, 1.0 / sample.n)
    return EmpiricalMeasure(locations=np.array(locations), weights=weights)


def measure_count(mu: EmpiricalMeasure, a: float, b: float) -> float:
    """[a, b) 内原子的总权重"""
    if not a < b:
        raise InvalidParameterError(f"区间要求 a < b，当前: [{a}, {b})")
    inside = (mu.locations >= a) & (mu.locations < b)
    return float(np.sum(mu.weights[inside]))


def measure_moment(mu: EmpiricalMeasure, m: int) -> float:
    """Σ w·x^m"""
    if m < 1:
        raise InvalidParameterError(f"矩阶数 m 必须 >= 1，当前: {m}")
    return float(np.sum(mu.weights * mu.locations**m))


def spectral_radius(sample: SpectralSample) -> float:
    return float(np.max(np.abs(sample.normalized())))


def spectral_gap(sample: SpectralSample) -> float:
    """归一化样本的 λ_max - 次大特征值"""
    if sample.n < 2:
        raise InvalidParameterError("谱间隙要求 n >= 2")
    values = sample.normalized()
    return float(values[-1] - values[-2])
