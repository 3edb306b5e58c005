"""
moment-convergence：经验矩对理论矩的收敛

环面模型：μ_n(P_m) 对照 μ(P_m) + c_m/n（c_m 为有限规模修正）。
缩放模型：ν_n(P_m) 对照满射展开 ν_γ(P_m)，并检查 |ν_n - ν_γ| 沿 n 不增；
非周期模型额外比较 B_n 与周期延拓 B̃_n 的同阶矩，差值应随 n 减小。
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List

from ermlab.domain.experiments.manifest import ResultRecord, StudyResult
from ermlab.domain.experiments.studies.base import BaseStudy
from ermlab.domain.theory.high_density import nu_gamma_moment
from ermlab.domain.theory.limit import finite_size_correction, mu_moment
from ermlab.domain.theory.models import MomentMethod, MomentReport

logger = logging.getLogger(__name__)


@dataclass
class _Realization:
    moments: Dict[int, float]
    boundary_gap: Dict[int, float] = field(default_factory=dict)


class MomentConvergenceStudy(BaseStudy):
    """经验矩收敛研究"""

    command = "moment-convergence"

    def _theory(self) -> Dict[int, MomentReport]:
        if self.is_scaled:
            return {
                m: nu_gamma_moment(self.kernel, self.config.model.gamma, m, self.surjection_spec())
                for m in self.config.moments
            }
        cutoff = self.config.quadrature.cutoff
        reports = {m: mu_moment(self.kernel, m, cutoff, self.fourier_spec()) for m in self.config.moments}
        if 1 in reports:
            # 傅里叶反演：Σ_k F̂(k) = F(0)，部分和与 F(0) 之差即截断尾项
            report = reports[1]
            exact = float(self.kernel.value_at_zero().real)
            report.error_estimate = abs(report.value - exact)
            report.value = exact
            report.method = MomentMethod.CLOSED_FORM
        return reports

    def _correction(self, m: int) -> float:
        """环面模型的 1/n 修正系数；m = 1 时 μ_n(P₁) 与 μ(P₁) 都等于 F(0)"""
        if self.is_scaled or m < 2:
            return 0.0
        return finite_size_correction(self.kernel, m, self.config.quadrature.cutoff, self.fourier_spec())

    def _compare_boundary(self) -> bool:
        return self.is_scaled and not self.config.model.periodic_extension

    async def execute(self) -> StudyResult:
        reports = self._theory()
        theory = {m: report.value for m, report in reports.items()}
        corrections = {m: self._correction(m) for m in self.config.moments}
        tol = self.config.tolerance
        quantity = "nu_n_moment" if self.is_scaled else "mu_n_moment"
        deviations: Dict[int, List[float]] = {m: [] for m in self.config.moments}
        slacks: Dict[int, List[float]] = {m: [] for m in self.config.moments}
        boundary: Dict[int, List[float]] = {m: [] for m in self.config.moments}
        boundary_slack: Dict[int, List[float]] = {m: [] for m in self.config.moments}
        boundary_rows: List[dict] = []

        for n in self.config.n_list:

            def task(index: int, n: int = n) -> _Realization:
                pts, _, sample = self.spectrum_of(n, index)
                result = _Realization(moments={m: self.normalized_moment(sample, m) for m in self.config.moments})
                if self._compare_boundary():
                    periodic = self.solve(self.build_matrix(pts, periodic_extension=True))
                    result.boundary_gap = {
                        m: result.moments[m] - self.normalized_moment(periodic, m) for m in self.config.moments
                    }
                return result

            results = self.finite(await self.fan_out(task, label=f" n={n}"))
            if not results:
                continue
            count = len(results)
            provenance = dict(n=n, seed_range=self.seed_range(), gamma=self.config.model.gamma)
            for m in self.config.moments:
                stats = self.statistics([r.moments[m] for r in results])
                expected = theory[m] + corrections[m] / n
                self.result.records.append(
                    ResultRecord.monte_carlo(
                        quantity, expected, stats.mean, stats.standard_error, count,
                        tol.mc_se, floor=tol.quadrature_rel * abs(expected), m=m, **provenance,
                    )
                )
                deviations[m].append(abs(stats.mean - theory[m]))
                slacks[m].append(tol.mc_se * stats.standard_error)
                if self._compare_boundary():
                    gap = self.statistics([abs(r.boundary_gap[m]) for r in results])
                    boundary[m].append(gap.mean)
                    boundary_slack[m].append(tol.mc_se * gap.standard_error)
                    boundary_rows.append(
                        {"n": n, "m": m, "mean_abs_gap": gap.mean, "se": gap.standard_error}
                    )

        if len(self.config.n_list) > 1:
            for m in self.config.moments:
                if len(deviations[m]) == len(self.config.n_list):
                    self.result.records.append(
                        ResultRecord.trend(
                            f"{quantity}_deviation_non_increasing",
                            self.non_increasing(deviations[m], slacks[m]),
                            m=m,
                            gamma=self.config.model.gamma,
                            seed_range=self.seed_range(),
                        )
                    )
                if boundary[m] and len(boundary[m]) == len(self.config.n_list) and m >= 2:
                    self.result.records.append(
                        ResultRecord.trend(
                            "boundary_gap_non_increasing",
                            self.non_increasing(boundary[m], boundary_slack[m]),
                            m=m,
                            gamma=self.config.model.gamma,
                            seed_range=self.seed_range(),
                        )
                    )
        self.write_artifact_json(
            "moment_reports.json",
            {"model": self.config.model.kind, "reports": [reports[m].to_dict() for m in self.config.moments]},
        )
        if boundary_rows:
            self.write_artifact_table("boundary_gap.csv", boundary_rows, ["n", "m", "mean_abs_gap", "se"])
        logger.info("moment-convergence 完成: %s 条记录", len(self.result.records))
        return self.result
