"""
伪特征向量残差与傅里叶二次型

Φ_{k,n} = (e^{2iπk·X_i})_i；A_n Φ_{k,n} - F̂(k) Φ_{k,n} 直接由矩阵-向量乘积得到，不需要特征分解。
"""
import logging
from typing import Optional, Sequence, Union

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError, KernelPreconditionError
from ermlab.domain.kernels.fourier import QuadratureSpec, fourier_coefficient, fourier_coefficients_on_cube
from ermlab.domain.kernels.periodic import PeriodicKernel
from ermlab.domain.matrices.builders import build_A
from ermlab.domain.pointset.models import PointSet

logger = logging.getLogger(__name__)

Norm = Union[int, float, str]


def plane_wave(pts: PointSet, k: Sequence[int]) -> np.ndarray:
    """Φ_{k,n}"""
    return np.exp(2j * np.pi * (pts.coords @ np.asarray(k, dtype=float)))


def _lp_norm(vector: np.ndarray, p: Norm) -> float:
    if p in ("inf", np.inf, float("inf")):
        return float(np.max(np.abs(vector)))
    p = float(p)
    if p < 2:
        raise InvalidParameterError(f"残差范数要求 p >= 2 或 ∞，当前: {p}")
    return float(np.sum(np.abs(vector) ** p) ** (1.0 / p))


def eigenvector_residual(
    F: PeriodicKernel,
    pts: PointSet,
    k: Sequence[int],
    p: Norm = 2,
    coefficient: Optional[complex] = None,
    spec: Optional[QuadratureSpec] = None,
) -> float:
    """
    ‖A_n Φ_{k,n} - F̂(k) Φ_{k,n}‖_p（未归一化的 ℓ^p 范数）

    Args:
        F: 厄米周期核
        pts: 点集
        k: 格点
        p: 2、∞ 或其他 p > 2
        coefficient: 预先算好的 F̂(k)，None 时现算

    Raises:
        KernelPreconditionError: F 非厄米
    """
    if not F.hermitian:
        raise KernelPreconditionError(f"{F.kernel_id} 非厄米")
    if len(k) != F.d:
        raise InvalidParameterError(f"格点维度 {len(k)} 与核维度 {F.d} 不一致")
    if coefficient is None:
        coefficient = fourier_coefficient(F, tuple(k), spec).value
    phi = plane_wave(pts, k)
    A = build_A(F, pts)
    residual = A.entries @ phi / pts.n - coefficient * phi
    return _lp_norm(residual, p)


def fourier_quadratic_form(
    F: PeriodicKernel,
    pts: PointSet,
    U: np.ndarray,
    K: int,
    spec: Optional[QuadratureSpec] = None,
) -> complex:
    """
    截断恒等式 Σ_{‖k‖_∞<=K} F̂(k) |Σ_i e^{2iπk·X_i} U_i|²

    对有限傅里叶级数核（K 覆盖全部系数）精确等于 Uᵀ A Ū。
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (pts.n,):
        raise InvalidParameterError(f"U 的长度必须为 n={pts.n}，当前形状: {U.shape}")
    lattice, values, _ = fourier_coefficients_on_cube(F, K, spec)
    phases = np.exp(2j * np.pi * (pts.coords @ lattice.T.astype(float)))
    sums = U @ phases
    return complex(np.sum(values * np.abs(sums) ** 2))
