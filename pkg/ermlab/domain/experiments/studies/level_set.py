"""
level-set：水平集密度 ψ 的直方图及其矩

∫ t^m ψ(t) dt 应等于 f^{*m}(0)；由 ψ 的矩重建的次阶项 I_m 与卷积幂公式对照。
n_list 中的每个 n 在模型 γ 上抽样，写出 δ_n^d·#{λ'/γ ∈ 箱} 与 ψ 的逐箱质量，供作图。
"""
import logging
from typing import List

import numpy as np

from ermlab.domain.experiments.manifest import ResultRecord, StudyResult
from ermlab.domain.experiments.studies.base import BaseStudy
from ermlab.domain.kernels.convolution import convolution_power_at_zero
from ermlab.domain.kernels.level_set import LevelSetBins, LevelSetDensity, level_set_density
from ermlab.domain.theory.high_density import (
    high_density_scaled_measure,
    second_order_term,
    second_order_term_from_level_set,
)

logger = logging.getLogger(__name__)

_COARSE_BINS = 40

MEASURE_COLUMNS = ["n", "bin_lo", "bin_hi", "psi_mass", "empirical_mass", "se"]


def coarse_edges(density: LevelSetDensity, bins: int = _COARSE_BINS) -> np.ndarray:
    lo = float(np.min(density.bin_lo))
    hi = float(np.max(density.bin_hi))
    return np.linspace(lo, hi + 1e-12 * max(1.0, abs(hi)), bins + 1)


def coarse_masses(density: LevelSetDensity, edges: np.ndarray) -> np.ndarray:
    """把细箱质量按中点归入粗箱"""
    index = np.searchsorted(edges, density.centers, side="right") - 1
    inside = (index >= 0) & (index < edges.size - 1)
    return np.bincount(index[inside], weights=density.masses[inside], minlength=edges.size - 1)


class LevelSetStudy(BaseStudy):
    """水平集研究"""

    command = "level-set"

    async def execute(self) -> StudyResult:
        q = self.config.quadrature
        tol = self.config.tolerance
        gamma = float(self.config.model.gamma)
        density = level_set_density(
            self.kernel,
            xi_cutoff=q.xi_cutoff,
            grid_step=q.xi_step,
            bins=LevelSetBins(bins_per_side=q.bins_per_side),
            eps0=q.eps0,
        )
        frame = density.to_frame()
        self.write_artifact_table("level_set.csv", frame.to_dict("records"), list(frame.columns))

        conv = self.convolution_spec()
        for m in self.config.moments:
            expected = convolution_power_at_zero(self.kernel, m, conv).value
            self.result.records.append(
                ResultRecord.relative("psi_moment", expected, density.moment(m), tol.quadrature_rel, m=m)
            )
            if m >= 2:
                self.result.records.append(
                    ResultRecord.relative(
                        "second_order_from_level_set",
                        second_order_term(self.kernel, gamma, m, conv),
                        second_order_term_from_level_set(density, gamma, m),
                        tol.quadrature_rel,
                        m=m,
                        gamma=gamma,
                    )
                )

        edges = coarse_edges(density)
        psi = coarse_masses(density, edges)
        rows: List[dict] = []
        for n in self.config.n_list:

            def task(index: int, n: int = n) -> np.ndarray:
                _, _, sample = self.spectrum_of(n, index)
                return high_density_scaled_measure(sample, gamma, edges)

            results = self.finite(await self.fan_out(task, label=f" n={n}"))
            if not results:
                continue
            stacked = np.vstack(results)
            mean = stacked.mean(axis=0)
            se = stacked.std(axis=0, ddof=1) / np.sqrt(len(results)) if len(results) > 1 else np.zeros_like(mean)
            for j in range(edges.size - 1):
                rows.append(
                    {
                        "n": n,
                        "bin_lo": float(edges[j]),
                        "bin_hi": float(edges[j + 1]),
                        "psi_mass": float(psi[j]),
                        "empirical_mass": float(mean[j]),
                        "se": float(se[j]),
                    }
                )
            logger.info("level-set n=%s: 缩放测度总质量 %.6g", n, float(mean.sum()))
        if rows:
            self.write_artifact_table("scaled_measure.csv", rows, MEASURE_COLUMNS)
        return self.result
