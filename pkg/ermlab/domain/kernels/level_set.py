"""
水平集密度 ψ：ξ ↦ f̂(ξ) 推前 Lebesgue 测度后的密度（去掉 0 的邻域）

∫ h(t) ψ(t) dt = ∫ h(f̂(ξ)) dξ，0 ∉ supp(h)。ξ 网格的每个单元按体积计入直方图，
|f̂| < eps0 的取值丢弃。默认两侧各用对数间隔分箱，靠近 eps0 时 ψ 变化剧烈，
对数分箱让箱中点矩误差保持在相对量级。
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from ermlab.app.config import settings
from ermlab.domain.exceptions import InvalidParameterError, KernelPreconditionError
from ermlab.domain.kernels.compact import CompactKernel
from ermlab.domain.kernels.fourier import choose_xi_cutoff, default_xi_grid, fourier_transform_grid

logger = logging.getLogger(__name__)


@dataclass
class LevelSetBins:
    """分箱配置：每侧箱数与间隔方式（log / linear）"""

    bins_per_side: int = 2000
    spacing: str = "log"

    def edges(self, lo: float, hi: float) -> np.ndarray:
        if hi <= lo:
            hi = lo * (1.0 + 1e-9) + 1e-300
        if self.spacing == "log":
            return np.geomspace(lo, hi, self.bins_per_side + 1)
        if self.spacing == "linear":
            return np.linspace(lo, hi, self.bins_per_side + 1)
        raise InvalidParameterError(f"未知的分箱方式: {self.spacing}")


@dataclass
class LevelSetDensity:
    """ψ 的直方图近似；箱不覆盖 (-eps0, eps0)"""

    bin_lo: np.ndarray
    bin_hi: np.ndarray
    masses: np.ndarray
    xi_cutoff: float
    grid_step: float
    eps0: float
    tail_max_abs: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_lo + self.bin_hi)

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.masses))

    def moment(self, m: int) -> float:
        """∫ t^m ψ(t) dt（箱中点近似）"""
        return float(np.sum(self.masses * self.centers**m))

    def density(self) -> np.ndarray:
        return self.masses / (self.bin_hi - self.bin_lo)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"bin_lo": self.bin_lo, "bin_hi": self.bin_hi, "mass": self.masses, "density": self.density()}
        )


def level_set_density(
    kernel: CompactKernel,
    xi_cutoff: Optional[float] = None,
    grid_step: Optional[float] = None,
    bins: Optional[LevelSetBins] = None,
    eps0: Optional[float] = None,
) -> LevelSetDensity:
    """
    计算 ψ 的直方图

    Args:
        kernel: 厄米紧支撑核（f̂ 为实数）
        xi_cutoff: ξ 截断半径；None 时扫描选择使外侧 |f̂| < eps0
        grid_step: ξ 网格步长；None 时按维度取默认
        bins: 分箱配置
        eps0: 丢弃阈值

    Raises:
        InvalidParameterError: eps0 <= 0
        KernelPreconditionError: 核非厄米
    """
    eps0 = settings.LEVEL_SET_EPS0 if eps0 is None else float(eps0)
    if eps0 <= 0:
        raise InvalidParameterError(f"eps0 必须 > 0，当前: {eps0}")
    if not kernel.hermitian:
        raise KernelPreconditionError(f"{kernel.kernel_id} 非厄米，f̂ 不是实数")
    bins = bins or LevelSetBins()
    step = grid_step or default_xi_grid(kernel.d)[1]

    tail_max = 0.0
    if xi_cutoff is None:
        xi_cutoff, tail_max = choose_xi_cutoff(kernel, eps0, xi_step=step)

    axis, values = fourier_transform_grid(kernel, xi_cutoff, step)
    values = np.asarray(values)
    if np.iscomplexobj(values):
        imag = float(np.max(np.abs(values.imag))) if values.size else 0.0
        if imag > 1e-8 * max(1.0, float(np.max(np.abs(values.real)))):
            logger.warning("%s 的 f̂ 虚部 %.3g 不可忽略，只取实部", kernel.kernel_id, imag)
        values = values.real
    flat = values.ravel()
    cell = step**kernel.d

    positive = flat[flat >= eps0]
    negative = -flat[flat <= -eps0]
    los, his, masses = [], [], []
    if negative.size:
        edges = bins.edges(eps0, float(np.max(negative)))
        counts, _ = np.histogram(negative, bins=edges)
        # 负半轴翻转回来并按升序排列
        los.append(-edges[:0:-1])
        his.append(-edges[-2::-1])
        masses.append(counts[::-1] * cell)
    if positive.size:
        edges = bins.edges(eps0, float(np.max(positive)))
        counts, _ = np.histogram(positive, bins=edges)
        los.append(edges[:-1])
        his.append(edges[1:])
        masses.append(counts * cell)

    if not masses:
        logger.warning("%s 的 |f̂| 在网格上全部小于 eps0=%s", kernel.kernel_id, eps0)
        empty = np.zeros(0)
        return LevelSetDensity(empty, empty, empty, float(xi_cutoff), step, eps0, tail_max)

    result = LevelSetDensity(
        bin_lo=np.concatenate(los),
        bin_hi=np.concatenate(his),
        masses=np.concatenate(masses).astype(float),
        xi_cutoff=float(xi_cutoff),
        grid_step=float(step),
        eps0=eps0,
        tail_max_abs=tail_max,
        metadata={"kernel": kernel.kernel_id, "grid_points": int(flat.size)},
    )
    logger.info(
        "ψ 直方图完成 kernel=%s cutoff=%.4g step=%.4g 总质量=%.6g",
        kernel.kernel_id,
        result.xi_cutoff,
        result.grid_step,
        result.total_mass,
    )
    return result
