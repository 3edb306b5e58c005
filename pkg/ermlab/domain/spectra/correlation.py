"""
经验特征值相关量

α_{m,k}(λ̄) = Σ_{|I|=m} ∏_{i∈I} λ̄_i^k，λ̄ = λ - F(0)；除以 C(n, m) 后在 k = 1 时期望恰为 M_m。
"""
from math import comb

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError
from ermlab.domain.spectra.models import SpectralSample


def elementary_symmetric(values: np.ndarray, m: int) -> float:
    """e_m(values)，按 e_j ← e_j + x·e_{j-1} 逐个吸收"""
    e = np.zeros(m + 1)
    e[0] = 1.0
    for x in np.asarray(values, dtype=float):
        e[1:] = e[1:] + x * e[:-1]
    return float(e[m])


def empirical_correlation(sample: SpectralSample, F0: float, m: int, k: int = 1) -> float:
    """
    α_{m,k}(λ̄)/C(n,m)，λ 取未归一化特征值

    Raises:
        InvalidParameterError: m < 1、k < 1 或 m > n
    """
    if m < 1 or k < 1:
        raise InvalidParameterError(f"要求 m >= 1 且 k >= 1，当前: m={m}, k={k}")
    if m > sample.n:
        raise InvalidParameterError(f"m={m} 超过特征值个数 n={sample.n}")
    centered = (sample.eigenvalues - F0) ** k
    return elementary_symmetric(centered, m) / comb(sample.n, m)
