"""
measure-compare：μ_n 与极限测度 μ = Σ_k δ_{F̂(k)} 的逐窗口对照

记录窗口计数、窗口命中率、谱半径、谱间隙与有限规模修正 n(μ_n(P₂) - μ(P₂))。
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ermlab.domain.experiments.manifest import ResultRecord, StudyResult
from ermlab.domain.experiments.studies.base import BaseStudy
from ermlab.domain.kernels.fourier import kernel_l2_norm_sq
from ermlab.domain.spectra.measures import empirical_measure, measure_count, spectral_gap, spectral_radius
from ermlab.domain.theory.limit import limit_measure
from ermlab.domain.theory.models import AtomicMeasure

logger = logging.getLogger(__name__)

Window = Tuple[float, float]


@dataclass
class _Realization:
    counts: Dict[Window, float]
    radius: float
    gap: float
    second_moment: float


def default_windows(measure: AtomicMeasure) -> List[Window]:
    """
    围绕最大的两个不同原子值各取一个窗口

    半宽取两原子间距的一半与 0.05 中的较小者。
    """
    distinct = np.unique(np.round(np.real(measure.values), 12))[::-1]
    top = [float(v) for v in distinct[:2]]
    if len(top) < 2:
        return [(top[0] - 0.05, top[0] + 0.05)]
    half = min(0.05, (top[0] - top[1]) / 2.0)
    return [(v - half, v + half) for v in top]


class MeasureCompareStudy(BaseStudy):
    """模型 1 的经验谱测度与极限测度对照"""

    command = "measure-compare"

    async def execute(self) -> StudyResult:
        measure = limit_measure(self.kernel, self.config.quadrature.cutoff, self.fourier_spec())
        windows: List[Window] = (
            [(float(a), float(b)) for a, b in self.config.windows] if self.config.windows else default_windows(measure)
        )
        atoms = np.sort(np.real(measure.values))[::-1]
        radius_theory = float(np.max(np.abs(measure.values)))
        gap_theory = float(atoms[0] - atoms[1]) if atoms.size > 1 else float("nan")
        f0 = abs(complex(self.kernel.value_at_zero())) ** 2
        finite_size_theory = float(f0 - kernel_l2_norm_sq(self.kernel, self.fourier_spec()))
        tol = self.config.tolerance
        logger.info("measure-compare: 窗口 %s, 理论谱半径 %.6g, 理论间隙 %.6g", windows, radius_theory, gap_theory)
        self.write_artifact_json(
            "limit_measure.json", {**measure.to_dict(), "windows": [list(w) for w in windows]}
        )

        for n in self.config.n_list:

            def task(index: int, n: int = n) -> _Realization:
                _, _, sample = self.spectrum_of(n, index)
                mu = empirical_measure(sample)
                return _Realization(
                    counts={w: measure_count(mu, *w) for w in windows},
                    radius=spectral_radius(sample),
                    gap=spectral_gap(sample) if sample.n >= 2 else float("nan"),
                    second_moment=self.normalized_moment(sample, 2),
                )

            results = self.finite(await self.fan_out(task, label=f" n={n}"))
            if not results:
                continue
            count = len(results)
            provenance = dict(n=n, seed_range=self.seed_range())

            for a, b in windows:
                expected = measure.count_in(a, b)
                counts = [r.counts[(a, b)] for r in results]
                stats = self.statistics(counts)
                label = f"[{a:g},{b:g})"
                self.result.records.append(
                    ResultRecord.monte_carlo(
                        f"window_count{label}", float(expected), stats.mean, stats.standard_error, count,
                        tol.mc_se, floor=0.5, **provenance,
                    )
                )
                match_rate = float(np.mean([c == expected for c in counts]))
                self.result.records.append(
                    ResultRecord(
                        quantity=f"window_match_rate{label}",
                        theory=1.0,
                        empirical_mean=match_rate,
                        tolerance=tol.rate,
                        realizations=count,
                        **provenance,
                    )
                )

            radius = self.statistics([r.radius for r in results])
            self.result.records.append(
                ResultRecord.monte_carlo(
                    "spectral_radius", radius_theory, radius.mean, radius.standard_error, count,
                    tol.mc_se, floor=tol.quadrature_rel, **provenance,
                )
            )
            gap = self.statistics([r.gap for r in results])
            self.result.records.append(
                ResultRecord.monte_carlo(
                    "spectral_gap", gap_theory, gap.mean, gap.standard_error, count,
                    tol.mc_se, floor=tol.quadrature_rel, **provenance,
                )
            )
            scaled = self.statistics([n * (r.second_moment - measure.l2_norm_sq) for r in results])
            self.result.records.append(
                ResultRecord.monte_carlo(
                    "finite_size_P2", finite_size_theory, scaled.mean, scaled.standard_error, count,
                    tol.mc_se, m=2, **provenance,
                )
            )
        return self.result
