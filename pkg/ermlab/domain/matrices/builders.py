"""
矩阵模型构造

A = (F(X_i - X_j))、B_n / B̃_n = (f((X_i - X_j)/δ))、几何图邻接矩阵、
u-形变矩阵 A - u·diag(行和)、Ā = A - F(0)I。

每个无序点对只求值一次：先按行块计算上三角，再共轭镜像到下三角，
对角线直接写入核在 0 处的值，因此存储上严格厄米。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Any, Callable, Dict, Optional

import numpy as np

from ermlab.app.config import settings
from ermlab.domain.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    KernelPreconditionError,
)
from ermlab.domain.kernels.compact import CompactKernel
from ermlab.domain.kernels.periodic import PeriodicKernel
from ermlab.domain.matrices.models import HermitianMatrix
from ermlab.domain.pointset.geometry import pairwise_differences
from ermlab.domain.pointset.models import ModelKind, PointSet

logger = logging.getLogger(__name__)

PairFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


class AdjacencyScale(str, Enum):
    """几何图半径的尺度：原始半径，或乘以 delta_n"""

    RAW = "raw"
    SCALED_BY_DELTA = "scaled_by_delta"


def _fill_upper(
    coords: np.ndarray,
    pair_values: PairFunction,
    dtype: Any,
    block_size: Optional[int] = None,
    threads: int = 1,
) -> np.ndarray:
    n = coords.shape[0]
    block = block_size or settings.MATRIX_BLOCK_SIZE
    upper = np.zeros((n, n), dtype=dtype)

    def fill(start: int) -> None:
        stop = min(start + block, n)
        # 行块只需要列 >= start 的部分
        values = pair_values(coords[start:stop], coords[start:])
        upper[start:stop, start:] = values

    starts = list(range(0, n, block))
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill, starts))
    else:
        for start in starts:
            fill(start)
    return upper


def _assemble(upper: np.ndarray, diagonal: complex, is_real: bool) -> np.ndarray:
    strict = np.triu(upper, k=1)
    full = strict + (strict.T if is_real else strict.conj().T)
    np.fill_diagonal(full, np.real(diagonal) if is_real else complex(np.real(diagonal), 0.0))
    return full


def _provenance(kernel_id: str, pts: PointSet, **extra: Any) -> Dict[str, Any]:
    info: Dict[str, Any] = {
        "kernel": kernel_id,
        "seed": pts.seed,
        "model": pts.model_tag,
        "n": pts.n,
        "d": pts.d,
    }
    info.update(extra)
    return info


def _check_dim(kernel_d: int, pts: PointSet) -> None:
    if kernel_d != pts.d:
        raise DimensionMismatchError(kernel_d, pts.d, what="核与点集维度")


def build_A(F: PeriodicKernel, pts: PointSet, threads: int = 1) -> HermitianMatrix:
    """
    A = (F(X_i - X_j))，差取环面规范代表元；对角线为 F(0)

    非厄米核返回 is_hermitian=False 的矩阵，特征值求解会拒绝它。

    Raises:
        DimensionMismatchError: 核与点集维度不一致
    """
    _check_dim(F.d, pts)
    is_real = F.is_real
    dtype = float if is_real else complex
    provenance = _provenance(F.kernel_id, pts, builder="A")

    if not F.hermitian:
        diffs = pairwise_differences(pts.coords, pts.coords, periodic=True)
        logger.warning("%s 非厄米，A 按一般矩阵存储", F.kernel_id)
        return HermitianMatrix(
            entries=np.asarray(F.evaluate(diffs), dtype=complex),
            is_real=False,
            provenance=provenance,
            is_hermitian=False,
        )

    def pair_values(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        values = F.evaluate(pairwise_differences(rows, cols, periodic=True))
        return np.real(values) if is_real else values

    upper = _fill_upper(pts.coords, pair_values, dtype, threads=threads)
    entries = _assemble(upper, F.value_at_zero(), is_real)
    logger.debug("构造 A 完成 n=%s kernel=%s seed=%s", pts.n, F.kernel_id, pts.seed)
    return HermitianMatrix(entries=entries, is_real=is_real, provenance=provenance)


def build_B(
    f: CompactKernel, pts: PointSet, periodic_extension: bool = False, threads: int = 1
) -> HermitianMatrix:
    """
    B_n = (f((X_i - X_j)/δ))；periodic_extension=True 时差取环面规范代表元（B̃_n）

    Raises:
        InvalidParameterError: 点集缺少 delta
        DimensionMismatchError: 核与点集维度不一致
    """
    _check_dim(f.d, pts)
    if pts.delta is None:
        raise InvalidParameterError("build_B 需要携带 delta 的点集（ScaledCube 模型）")
    if not f.hermitian:
        raise KernelPreconditionError(f"{f.kernel_id} 非厄米，B_n 无法按厄米矩阵存储")
    delta = float(pts.delta)
    is_real = f.is_real
    dtype = float if is_real else complex

    def pair_values(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        diffs = pairwise_differences(rows, cols, periodic=periodic_extension)
        values = f.evaluate(diffs / delta)
        return np.real(values) if is_real else values

    upper = _fill_upper(pts.coords, pair_values, dtype, threads=threads)
    entries = _assemble(upper, f.value_at_zero(), is_real)
    provenance = _provenance(
        f.kernel_id,
        pts,
        builder="B_periodic" if periodic_extension else "B",
        delta=delta,
        gamma=pts.gamma,
    )
    logger.debug(
        "构造 B 完成 n=%s delta=%.6g periodic=%s seed=%s", pts.n, delta, periodic_extension, pts.seed
    )
    return HermitianMatrix(entries=entries, is_real=is_real, provenance=provenance)


def build_geometric_adjacency(
    pts: PointSet,
    radius: float,
    scale: AdjacencyScale = AdjacencyScale.RAW,
    threads: int = 1,
) -> HermitianMatrix:
    """
    几何图邻接矩阵：i≠j 且距离 <= 半径时为 1，对角线为 0

    环面模型用环面距离，缩放立方体模型用欧氏距离；SCALED_BY_DELTA 时半径乘以 delta。

    Raises:
        InvalidParameterError: radius <= 0，或 SCALED_BY_DELTA 而点集缺少 delta
    """
    if not radius > 0:
        raise InvalidParameterError(f"几何图半径必须 > 0，当前: {radius}")
    effective = float(radius)
    if AdjacencyScale(scale) == AdjacencyScale.SCALED_BY_DELTA:
        if pts.delta is None:
            raise InvalidParameterError("SCALED_BY_DELTA 需要携带 delta 的点集")
        effective *= float(pts.delta)
    periodic = pts.model == ModelKind.TORUS

    def pair_values(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        dist = np.linalg.norm(pairwise_differences(rows, cols, periodic=periodic), axis=-1)
        return (dist <= effective).astype(float)

    upper = _fill_upper(pts.coords, pair_values, float, threads=threads)
    entries = _assemble(upper, 0.0, True)
    provenance = _provenance(f"geometric(radius={effective:.6g})", pts, builder="adjacency")
    return HermitianMatrix(entries=entries, is_real=True, provenance=provenance)


def build_u_deformed(F: PeriodicKernel, pts: PointSet, u: float, threads: int = 1) -> HermitianMatrix:
    """
    A - u·diag(A 的行和)；u = 1 时每行和为 0

    Raises:
        KernelPreconditionError: F 为复值核
    """
    if not F.is_real:
        raise KernelPreconditionError(f"{F.kernel_id} 为复值核，u-形变要求实值核")
    base = build_A(F, pts, threads=threads)
    entries = np.array(base.entries, copy=True)
    row_sums = np.sum(base.entries, axis=1)
    entries[np.diag_indices_from(entries)] -= u * row_sums
    provenance = dict(base.provenance, builder="u_deformed", u=float(u))
    return HermitianMatrix(entries=entries, is_real=True, provenance=provenance)


def build_Abar(F: PeriodicKernel, pts: PointSet, threads: int = 1) -> HermitianMatrix:
    """Ā = A - F(0)I，对角线为 0"""
    base = build_A(F, pts, threads=threads)
    entries = np.array(base.entries, copy=True)
    np.fill_diagonal(entries, 0.0)
    provenance = dict(base.provenance, builder="Abar")
    return HermitianMatrix(
        entries=entries, is_real=base.is_real, provenance=provenance, is_hermitian=base.is_hermitian
    )
