"""
correlations：特征值相关量 M_m 与推广 α_{m,k}

三条路线互相对照：M₂ = -∫F² 的闭式、det Ā^k 的网格求积（d(m-1) <= 2 时）与蒙特卡洛；
k = 1 时再用经验谱的 α_{m,1}/C(n, m) 检查无偏性（对每个 n 精确成立）。
"""
import logging
import math
from typing import Dict, Tuple

from ermlab.domain.experiments.manifest import ResultRecord, StudyResult
from ermlab.domain.experiments.studies.base import BaseStudy
from ermlab.domain.spectra.correlation import empirical_correlation
from ermlab.domain.theory.correlations import correlation_M2, correlation_Mm_mc, correlation_Mm_quadrature

logger = logging.getLogger(__name__)

# 网格求积每轴节点数：自由维数 1 / 2
_QUADRATURE_NODES = {1: 8192, 2: 1024}


class CorrelationsStudy(BaseStudy):
    """M_m / α_{m,k} 研究"""

    command = "correlations"

    def _quadrature(self, m: int, k: int) -> float:
        free = self.kernel.d * (m - 1)
        nodes = self.config.quadrature.nodes_per_axis or _QUADRATURE_NODES[free]
        return correlation_Mm_quadrature(self.kernel, m, nodes, k)

    async def execute(self) -> StudyResult:
        tol = self.config.tolerance
        samples = self.config.quadrature.mc_samples
        orders = sorted({m for m in self.config.moments if m >= 2})
        # (m, k) -> (参考值, 参考值标准误)
        reference: Dict[Tuple[int, int], Tuple[float, float]] = {}

        for m in orders:
            for k in self.config.correlation_k:
                mean, se = correlation_Mm_mc(self.kernel, m, k, samples, seed=self.seed_for(1000 * m + k))
                if m == 2 and k == 1:
                    closed = correlation_M2(self.kernel, self.fourier_spec())
                    self.result.records.append(
                        ResultRecord.monte_carlo("M2_closed_vs_mc", closed, mean, se, samples, tol.mc_se, m=2)
                    )
                    reference[(m, k)] = (closed, 0.0)
                    continue
                if self.kernel.d * (m - 1) <= 2:
                    quad = self._quadrature(m, k)
                    self.result.records.append(
                        ResultRecord.monte_carlo(
                            f"M{m}_k{k}_quadrature_vs_mc", quad, mean, se, samples,
                            tol.mc_se, floor=tol.quadrature_rel * abs(quad), m=m,
                        )
                    )
                    reference[(m, k)] = (quad, 0.0)
                else:
                    reference[(m, k)] = (mean, se)
                logger.info("M_%s(k=%s): 蒙特卡洛 %.6g ± %.2g", m, k, mean, se)

        f0 = float(complex(self.kernel.value_at_zero()).real)
        for n in self.config.n_list:
            valid = [m for m in orders if m <= n]

            def task(index: int, n: int = n) -> Dict[int, float]:
                _, _, sample = self.spectrum_of(n, index)
                return {m: empirical_correlation(sample, f0, m, 1) for m in valid}

            results = self.finite(await self.fan_out(task, label=f" n={n}"))
            if not results:
                continue
            for m in valid:
                if (m, 1) not in reference:
                    continue
                theory, theory_se = reference[(m, 1)]
                stats = self.statistics([r[m] for r in results])
                combined = math.hypot(stats.standard_error, theory_se)
                self.result.records.append(
                    ResultRecord.monte_carlo(
                        "alpha_empirical", theory, stats.mean, combined, len(results),
                        tol.mc_se, floor=tol.quadrature_rel * abs(theory),
                        m=m, n=n, seed_range=self.seed_range(),
                    )
                )
        return self.result
