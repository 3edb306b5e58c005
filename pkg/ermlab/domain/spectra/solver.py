"""
特征值求解与恒等式校验

稠密厄米矩阵统一走 scipy.linalg.eigh；残差检查只抽查最小、最大两个特征对。
"""
import logging
from typing import Dict, Optional

import numpy as np
from scipy import linalg

from ermlab.app.config import settings
from ermlab.domain.exceptions import IdentityCheckError, SpectralSolverError
from ermlab.domain.matrices.models import HermitianMatrix
from ermlab.domain.spectra.models import Normalization, SpectralSample

logger = logging.getLogger(__name__)


def eigenvalues(
    H: HermitianMatrix,
    normalization: Normalization = Normalization.DIVIDED_BY_N,
    check_residuals: Optional[bool] = None,
) -> SpectralSample:
    """
    计算全部实特征值（升序）

    Args:
        H: 厄米矩阵
        normalization: 谱样本的归一化约定
        check_residuals: 是否抽查极端特征对残差；None 时跟随 STRICT_CHECKS

    Raises:
        SpectralSolverError: 矩阵非厄米、求解不收敛或残差超限
    """
    if not H.is_hermitian:
        raise SpectralSolverError("矩阵非厄米，拒绝求解", H.provenance)
    check = settings.STRICT_CHECKS if check_residuals is None else check_residuals
    try:
        if check:
            values, vectors = linalg.eigh(H.entries, check_finite=True)
        else:
            values = linalg.eigh(H.entries, eigvals_only=True, check_finite=True)
            vectors = None
    except (linalg.LinAlgError, ValueError) as e:
        raise SpectralSolverError(f"特征值求解失败: {e}", H.provenance) from e

    if vectors is not None:
        scale = max(float(np.max(np.abs(values))), 1e-300)
        for index in {0, values.size - 1}:
            v = vectors[:, index]
            residual = float(np.linalg.norm(H.entries @ v - values[index] * v))
            if residual > settings.EIGEN_RESIDUAL_TOL * scale:
                raise SpectralSolverError(
                    f"特征对 {index} 残差 {residual:.3g} 超过 {settings.EIGEN_RESIDUAL_TOL}·‖H‖",
                    H.provenance,
                )
    return SpectralSample(eigenvalues=values, normalization=normalization, provenance=dict(H.provenance))


def verify_trace_identities(
    H: HermitianMatrix, sample: SpectralSample, rel_tol: float = 1e-9
) -> Dict[str, float]:
    """
    校验 Σλ = tr H 与 Σλ² = ‖H‖²_F

    Returns:
        两个恒等式的绝对偏差

    Raises:
        IdentityCheckError: 任一偏差超过 rel_tol·量级
    """
    values = sample.eigenvalues
    trace_dev = abs(float(np.sum(values)) - H.trace())
    frob = H.frobenius_sq()
    frob_dev = abs(float(np.sum(values**2)) - frob)
    scale = max(1.0, H.n * float(np.max(np.abs(values))))
    if trace_dev > rel_tol * scale or frob_dev > rel_tol * max(1.0, frob):
        raise IdentityCheckError(
            f"迹恒等式不成立: |Σλ - tr|={trace_dev:.3g}, |Σλ² - ‖H‖²|={frob_dev:.3g}"
            f"（来源：{H.provenance}）"
        )
    return {"trace": trace_dev, "frobenius": frob_dev}
