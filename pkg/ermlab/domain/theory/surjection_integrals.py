"""
满射类对应的闭合游走积分

对代表元 φ（取值 1..p），积分 ∫ ∏_{j=1}^m f(y_{φ(j)} - y_{φ(j+1)}) dy₂…dy_p，φ(m+1) = φ(1)，y₁ = 0。
闭合游走上每个顶点离 y₁ 至多 ⌊m/2⌋ 步，积分区域取 [-⌊m/2⌋R, ⌊m/2⌋R]^{d(p-1)}。

d = 1：每个坐标放在步长 h 的对称网格上，核离散成 Toeplitz 矩阵 K[a,b] = f((a-b)h) 的单元平均，
整条游走变成一次 einsum 收缩。d >= 2：扰乱 Sobol 序列，多次独立扰乱给出标准误。
"""
import logging
import string
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from ermlab.domain.exceptions import QuadratureError
from ermlab.domain.kernels.compact import CompactKernel

logger = logging.getLogger(__name__)

# 单元平均的子采样点数（偶数，使支撑端点所在单元精确取半）
_SUBCELL_SAMPLES = 8
# einsum 中间张量的元素数上限，超出时网格加粗
_MAX_INTERMEDIATE = 5e7

Edge = Tuple[int, int]


@dataclass
class WalkGraph:
    """闭合游走的边多重集；self_loops 计数 φ(j) = φ(j+1) 的步"""

    p: int
    edges: Counter
    self_loops: int

    @classmethod
    def from_representative(cls, representative: Sequence[int]) -> "WalkGraph":
        m = len(representative)
        edges: Counter = Counter()
        loops = 0
        for j in range(m):
            u, v = representative[j], representative[(j + 1) % m]
            if u == v:
                loops += 1
            else:
                edges[(u, v)] += 1
        return cls(p=max(representative), edges=edges, self_loops=loops)


def walk_half_width(m: int, support_radius: float) -> float:
    return max(1, m // 2) * support_radius


def toeplitz_kernel(kernel: CompactKernel, steps: int, half_steps: int) -> Tuple[np.ndarray, float]:
    """
    K[a, b] = f((a - b)h) 的单元平均，网格点 j·h，j = -half_steps..half_steps

    Returns:
        (K, h)
    """
    h = kernel.support_radius / steps
    size = 2 * half_steps + 1
    offsets = np.arange(-(size - 1), size) * h
    sub = ((np.arange(_SUBCELL_SAMPLES) + 0.5) / _SUBCELL_SAMPLES - 0.5) * h
    samples = kernel.evaluate((offsets[:, None] + sub[None, :])[..., None])
    profile = np.mean(np.asarray(samples, dtype=complex if not kernel.is_real else float), axis=1)
    index = np.arange(size)
    # profile[t] 对应位移 (t - (size-1))·h
    matrix = profile[index[:, None] - index[None, :] + size - 1]
    return matrix, h


def _contraction(graph: WalkGraph, K: np.ndarray, pinned: int) -> Tuple[str, List[np.ndarray]]:
    letters = string.ascii_letters
    terms: List[str] = []
    operands: List[np.ndarray] = []
    for (u, v), count in sorted(graph.edges.items()):
        for _ in range(count):
            if u == 1:
                terms.append(letters[v])
                operands.append(K[pinned, :])
            elif v == 1:
                terms.append(letters[u])
                operands.append(K[:, pinned])
            else:
                terms.append(letters[u] + letters[v])
                operands.append(K)
    return ",".join(terms) + "->", operands


def _largest_intermediate(expr: str, path: List[Tuple[int, ...]], size: int) -> float:
    inputs = [set(term) for term in expr.split("->")[0].split(",")]
    largest = max((size ** len(t) for t in inputs), default=1)
    for contraction in path[1:]:
        chosen = [inputs[i] for i in sorted(contraction, reverse=True)]
        for i in sorted(contraction, reverse=True):
            inputs.pop(i)
        union = set().union(*chosen)
        remaining = set().union(*inputs) if inputs else set()
        result = {c for c in union if c in remaining}
        largest = max(largest, size ** len(union))
        inputs.append(result)
    return float(largest)


def grid_walk_integral(
    kernel: CompactKernel, representative: Sequence[int], steps: int
) -> Tuple[complex, int]:
    """
    d = 1 网格积分

    中间张量过大时逐次减半 steps。

    Returns:
        (积分值, 实际使用的 steps)
    """
    graph = WalkGraph.from_representative(representative)
    m = len(representative)
    f0 = complex(kernel.value_at_zero())
    loop_factor = f0**graph.self_loops
    if graph.p == 1:
        return loop_factor, steps

    while True:
        half_steps = steps * max(1, m // 2)
        size = 2 * half_steps + 1
        K, h = toeplitz_kernel(kernel, steps, half_steps)
        expr, operands = _contraction(graph, K, pinned=half_steps)
        path, _ = np.einsum_path(expr, *operands, optimize="greedy")
        if _largest_intermediate(expr, path, size) <= _MAX_INTERMEDIATE or steps <= 4:
            break
        steps //= 2
        logger.debug("游走 %s 的中间张量过大，steps 降为 %s", tuple(representative), steps)
    value = np.einsum(expr, *operands, optimize=path) * h ** (graph.p - 1)
    if not np.isfinite(value):
        raise QuadratureError(f"游走 {tuple(representative)} 的网格积分出现非有限值")
    return complex(value) * loop_factor, steps


def qmc_walk_integral(
    kernel: CompactKernel,
    representative: Sequence[int],
    samples_log2: int,
    randomizations: int,
    seed: int,
) -> Tuple[complex, float]:
    """
    d >= 2 的扰乱 Sobol 积分

    Returns:
        (均值, 标准误)：各次独立扰乱估计的均值与标准误
    """
    graph = WalkGraph.from_representative(representative)
    m = len(representative)
    f0 = complex(kernel.value_at_zero())
    loop_factor = f0**graph.self_loops
    if graph.p == 1:
        return loop_factor, 0.0

    d = kernel.d
    free = graph.p - 1
    half = walk_half_width(m, kernel.support_radius)
    volume = (2.0 * half) ** (d * free)
    estimates: List[complex] = []
    seeds = np.random.SeedSequence(seed).spawn(randomizations)
    for child in seeds:
        sampler = qmc.Sobol(d=d * free, scramble=True, seed=np.random.default_rng(child))
        u = sampler.random_base2(m=samples_log2)
        points = (u * 2.0 - 1.0) * half
        y = np.zeros((points.shape[0], graph.p + 1, d))
        y[:, 2:, :] = points.reshape(points.shape[0], free, d)
        product = np.ones(points.shape[0], dtype=complex)
        for (a, b), count in graph.edges.items():
            product *= np.asarray(kernel.evaluate(y[:, a, :] - y[:, b, :]), dtype=complex) ** count
        estimates.append(volume * complex(np.mean(product)))
    values = np.array(estimates)
    se = float(np.std(values, ddof=1) / np.sqrt(len(values))) if len(values) > 1 else float("inf")
    return complex(np.mean(values)) * loop_factor, se * abs(loop_factor)


def group_by_walk_shape(representatives: Sequence[Sequence[int]]) -> Dict[int, int]:
    """边多重集与自环数都相同的游走积分相同；返回 {首个代表元下标: 出现次数}"""
    first: Dict[Tuple, int] = {}
    counts: Dict[int, int] = {}
    for index, rep in enumerate(representatives):
        graph = WalkGraph.from_representative(rep)
        key = (tuple(sorted(graph.edges.items())), graph.self_loops)
        owner = first.setdefault(key, index)
        counts[owner] = counts.get(owner, 0) + 1
    return counts
