"""
density-sweep：ν_γ(P_m) 沿 γ 的扫描

对每个 γ 给出满射展开值、高密度主项 γ^{m-1} f^{*m}(0) 及次阶项 I_m，写出比值表；
γ 多项式的首两项系数分别与卷积幂、次阶项公式对照（与 γ 无关，只记一次）。
n_list 非空时，在 n = max(n_list) 且 n >= 10γ 的密度上补充经验 ν_n(P_m)。
"""
import logging
from typing import Dict, List

from ermlab.domain.experiments.manifest import ResultRecord, StudyResult
from ermlab.domain.experiments.studies.base import BaseStudy
from ermlab.domain.kernels.convolution import convolution_power_at_zero
from ermlab.domain.theory.high_density import high_density_moment, nu_gamma_moment, second_order_term

logger = logging.getLogger(__name__)

# 经验对照只在 n/γ 不小于该值时进行，边界效应 O(δ_n) 才可忽略
_EMPIRICAL_DENSITY_RATIO = 10

TABLE_COLUMNS = ["gamma", "m", "nu_gamma", "high_density", "ratio", "second_order", "relative_remainder"]


class DensitySweepStudy(BaseStudy):
    """高密度极限扫描"""

    command = "density-sweep"

    def _coefficient_records(self) -> None:
        tol = self.config.tolerance.quadrature_rel
        conv = self.convolution_spec()
        for m in self.config.moments:
            if m < 2:
                continue
            report = nu_gamma_moment(self.kernel, 1.0, m, self.surjection_spec())
            leading = convolution_power_at_zero(self.kernel, m, conv).value
            self.result.records.append(
                ResultRecord.relative("leading_coefficient", leading, report.coefficients[m - 1], tol, m=m)
            )
            second = second_order_term(self.kernel, 1.0, m, conv)
            self.result.records.append(
                ResultRecord.relative("second_order_coefficient", second, report.coefficients[m - 2], tol, m=m)
            )

    async def execute(self) -> StudyResult:
        self._coefficient_records()
        conv = self.convolution_spec()
        tol = self.config.tolerance
        rows: List[dict] = []
        nu_values: Dict[float, Dict[int, float]] = {}
        for gamma in self.config.gammas:
            nu_values[gamma] = {}
            for m in self.config.moments:
                nu = nu_gamma_moment(self.kernel, gamma, m, self.surjection_spec()).value
                hd = high_density_moment(self.kernel, gamma, m, conv)
                second = second_order_term(self.kernel, gamma, m, conv) if m >= 2 else 0.0
                remainder = (nu - hd - second) / hd if hd else float("nan")
                nu_values[gamma][m] = nu
                rows.append(
                    {
                        "gamma": gamma,
                        "m": m,
                        "nu_gamma": nu,
                        "high_density": hd,
                        "ratio": nu / hd if hd else float("nan"),
                        "second_order": second,
                        "relative_remainder": remainder,
                    }
                )
                logger.info("γ=%g m=%s: ν=%.8g, 主项=%.8g, 比值=%.6g", gamma, m, nu, hd, nu / hd if hd else float("nan"))
        self.write_artifact_table("density_sweep.csv", rows, TABLE_COLUMNS)

        n = max(self.config.n_list)
        for gamma in self.config.gammas:
            if n < _EMPIRICAL_DENSITY_RATIO * gamma:
                logger.info("跳过 γ=%g 的经验对照：n=%s < %s·γ", gamma, n, _EMPIRICAL_DENSITY_RATIO)
                continue

            def task(index: int, gamma: float = gamma) -> Dict[int, float]:
                _, _, sample = self.spectrum_of(n, index, gamma)
                return {m: self.normalized_moment(sample, m) for m in self.config.moments}

            results = self.finite(await self.fan_out(task, label=f" γ={gamma:g}"))
            if not results:
                continue
            for m in self.config.moments:
                stats = self.statistics([r[m] for r in results])
                theory = nu_values[gamma][m]
                self.result.records.append(
                    ResultRecord.monte_carlo(
                        "nu_n_moment", theory, stats.mean, stats.standard_error, len(results),
                        tol.mc_se, floor=tol.quadrature_rel * abs(theory),
                        m=m, gamma=gamma, n=n, seed_range=self.seed_range(),
                    )
                )
        return self.result
