"""
环面几何基础运算

torus_diff 返回 x - y 模 Z^d 的规范代表元（半开区间 [-1/2, 1/2)）。
"""
from typing import Union

import numpy as np

from ermlab.domain.exceptions import DimensionMismatchError
from ermlab.domain.pointset.models import TorusPoint

ArrayLike = Union[np.ndarray, TorusPoint]


def wrap_to_torus(x: np.ndarray) -> np.ndarray:
    """
    将任意实数数组逐分量映射到 [-1/2, 1/2)

    Args:
        x: 任意形状的实数数组

    Returns:
        与 x 同形状的规范代表元
    """
    arr = np.asarray(x, dtype=float)
    wrapped = arr - np.floor(arr + 0.5)
    # 舍入可能落到 +1/2，上移回半开区间
    return np.where(wrapped >= 0.5, wrapped - 1.0, wrapped)


def _as_coords(x: ArrayLike) -> np.ndarray:
    if isinstance(x, TorusPoint):
        return x.as_array()
    return np.asarray(x, dtype=float)


def torus_diff(x: ArrayLike, y: ArrayLike) -> TorusPoint:
    """
    环面上的差 x - y（规范代表元）

    Raises:
        DimensionMismatchError: 两点维度不一致
    """
    a, b = _as_coords(x), _as_coords(y)
    if a.shape != b.shape:
        raise DimensionMismatchError(a.shape[-1], b.shape[-1])
    return TorusPoint(tuple(float(c) for c in wrap_to_torus(a - b)))


def torus_norm(x: ArrayLike) -> float:
    """规范代表元的欧氏范数，不超过 sqrt(d)/2"""
    return float(np.linalg.norm(wrap_to_torus(_as_coords(x))))


def pairwise_differences(
    rows: np.ndarray, cols: np.ndarray, periodic: bool
) -> np.ndarray:
    """
    成对差 rows[i] - cols[j]，形状 (len(rows), len(cols), d)

    Args:
        rows: (a, d) 坐标
        cols: (b, d) 坐标
        periodic: True 时取环面规范代表元，否则为普通欧氏差
    """
    diffs = rows[:, None, :] - cols[None, :, :]
    if periodic:
        return wrap_to_torus(diffs)
    return diffs
