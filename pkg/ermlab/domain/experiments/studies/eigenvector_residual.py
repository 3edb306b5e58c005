"""
eigenvector-residual：平面波 Φ_k 作为伪特征向量的残差

‖A_n Φ_k/n - F̂(k) Φ_k‖₂² 的期望趋于 ‖F‖² - |F̂(k)|²；其余范数（p > 2 与 ∞）的残差应随 n 减小。
"""
import logging
from typing import Dict, List

from ermlab.domain.experiments.manifest import ResultRecord, StudyResult
from ermlab.domain.experiments.studies.base import BaseStudy
from ermlab.domain.kernels.fourier import fourier_coefficient, kernel_l2_norm_sq
from ermlab.domain.spectra.residuals import eigenvector_residual

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ["n", "norm", "mean", "se"]


def _norm_label(p) -> str:
    return "inf" if str(p) == "inf" else f"{float(p):g}"


class EigenvectorResidualStudy(BaseStudy):
    """伪特征向量残差研究"""

    command = "eigenvector-residual"

    async def execute(self) -> StudyResult:
        k = tuple(int(c) for c in self.config.lattice_k)
        spec = self.fourier_spec()
        coefficient = fourier_coefficient(self.kernel, k, spec).value
        theory = kernel_l2_norm_sq(self.kernel, spec) - abs(coefficient) ** 2
        tol = self.config.tolerance
        norms = list(self.config.norms)
        labels = [_norm_label(p) for p in norms]
        rows: List[dict] = []
        means: Dict[str, List[float]] = {label: [] for label in labels}
        slacks: Dict[str, List[float]] = {label: [] for label in labels}

        for n in self.config.n_list:

            def task(index: int, n: int = n) -> Dict[str, float]:
                pts = self.sample_points(n, self.seed_for(index))
                if self.config.write_points and index == 0:
                    self.write_points(n, pts)
                return {
                    label: eigenvector_residual(self.kernel, pts, k, p, coefficient=coefficient)
                    for label, p in zip(labels, norms)
                }

            results = self.finite(await self.fan_out(task, label=f" n={n}"))
            if not results:
                continue
            for label in labels:
                stats = self.statistics([r[label] for r in results])
                rows.append({"n": n, "norm": label, "mean": stats.mean, "se": stats.standard_error})
                means[label].append(stats.mean)
                slacks[label].append(tol.mc_se * stats.standard_error)
                if label == "2":
                    squared = self.statistics([r[label] ** 2 for r in results])
                    self.result.records.append(
                        ResultRecord.monte_carlo(
                            "residual_2_squared", theory, squared.mean, squared.standard_error, len(results),
                            tol.mc_se, floor=tol.quadrature_rel * abs(theory),
                            n=n, seed_range=self.seed_range(),
                        )
                    )
            logger.info("eigenvector-residual n=%s k=%s 完成", n, k)

        if len(self.config.n_list) > 1:
            for label in labels:
                if label == "2" or len(means[label]) != len(self.config.n_list):
                    continue
                self.result.records.append(
                    ResultRecord.trend(
                        f"residual_{label}_non_increasing",
                        self.non_increasing(means[label], slacks[label]),
                        seed_range=self.seed_range(),
                    )
                )
        if rows:
            self.write_artifact_table("residuals.csv", rows, TABLE_COLUMNS)
        return self.result
