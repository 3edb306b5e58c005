"""
点集采样

单位环面 / 立方体 Ω = [-1/2, 1/2)^d 上的独立均匀采样；模型 2 同样在 Ω 上采样，
只记录 delta_n = (gamma/n)^{1/d}，核在构造矩阵时缩放（f_delta）。

种子划分规则：第 index 次实现使用 SeedSequence(master_seed, spawn_key=(index,))，
并行与串行运行得到相同的点集。
"""
import logging

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError
from ermlab.domain.pointset.models import ModelKind, PointSet

logger = logging.getLogger(__name__)


def realization_seed(master_seed: int, index: int) -> int:
    """
    由 (主种子, 实现编号) 派生 64 位实现种子

    Args:
        master_seed: 主种子
        index: 实现编号（从 0 开始）

    Returns:
        int: 该实现的 64 位种子
    """
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(index),))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _check_sizes(n: int, d: int) -> None:
    if n < 1:
        raise InvalidParameterError(f"点数 n 必须 >= 1，当前: {n}")
    if d < 1:
        raise InvalidParameterError(f"维度 d 必须 >= 1，当前: {d}")


def _uniform_cube(n: int, d: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(int(seed))
    # random() ∈ [0, 1)，平移后落在 [-1/2, 1/2)
    return rng.random((n, d)) - 0.5


def sample_torus(n: int, d: int, seed: int) -> PointSet:
    """
    环面模型：n 个独立均匀点

    Raises:
        InvalidParameterError: n = 0 或 d = 0
    """
    _check_sizes(n, d)
    coords = _uniform_cube(n, d, seed)
    logger.debug("采样环面点集 n=%s d=%s seed=%s", n, d, seed)
    return PointSet(coords=coords, seed=int(seed), model=ModelKind.TORUS)


def sample_for_scaled_model(n: int, d: int, gamma: float, seed: int) -> PointSet:
    """
    缩放模型：在 Ω 上采样，记录 delta_n = (gamma/n)^{1/d}

    Raises:
        InvalidParameterError: gamma <= 0，或 gamma > n（此时 delta_n > 1）
    """
    _check_sizes(n, d)
    if not gamma > 0:
        raise InvalidParameterError(f"密度 gamma 必须 > 0，当前: {gamma}")
    if gamma > n:
        raise InvalidParameterError(f"gamma={gamma} > n={n} 会使 delta_n > 1")
    delta = (gamma / n) ** (1.0 / d)
    coords = _uniform_cube(n, d, seed)
    logger.debug("采样缩放模型点集 n=%s d=%s gamma=%s delta=%.6g", n, d, gamma, delta)
    return PointSet(
        coords=coords,
        seed=int(seed),
        model=ModelKind.SCALED_CUBE,
        delta=delta,
        gamma=float(gamma),
    )
