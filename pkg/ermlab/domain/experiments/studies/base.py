"""
研究基类

一次研究 = 若干 (n, 实现) 任务 + 理论预言 + 归约成结果记录。
实现之间只共享加锁的计数器与产物列表：任务在线程中执行（asyncio.to_thread），并发数由信号量限制，
asyncio.gather 保序返回，归约在主协程里按实现编号顺序进行。
"""
import asyncio
import logging
import threading
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from ermlab.domain.exceptions import IdentityCheckError, SpectralSolverError
from ermlab.domain.experiments.config import ExperimentConfig
from ermlab.domain.experiments.kernel_factory import build_kernel_for
from ermlab.domain.experiments.manifest import StudyResult
from ermlab.domain.kernels.compact import CompactKernel
from ermlab.domain.kernels.convolution import ConvolutionSpec
from ermlab.domain.kernels.fourier import QuadratureSpec as FourierQuadratureSpec
from ermlab.domain.kernels.periodic import PeriodicKernel
from ermlab.domain.matrices.builders import build_A, build_B
from ermlab.domain.matrices.models import HermitianMatrix
from ermlab.domain.pointset.models import PointSet
from ermlab.domain.pointset.sampler import realization_seed, sample_for_scaled_model, sample_torus
from ermlab.domain.spectra.models import Normalization, SpectralSample
from ermlab.domain.spectra.solver import eigenvalues, verify_trace_identities
from ermlab.domain.spectra.statistics import RunningStatistics
from ermlab.domain.theory.high_density import SurjectionSpec
from ermlab.infrastructure.io.matrix_dump import dump_matrix
from ermlab.infrastructure.io.points_csv import PointSetCsv
from ermlab.infrastructure.io.tables import ResultWriter

logger = logging.getLogger(__name__)

T = TypeVar("T")


class BaseStudy(ABC):
    """研究基类：子类实现 execute()"""

    command: str = ""

    def __init__(self, config: ExperimentConfig, output_dir: Path) -> None:
        self.config = config
        self.output_dir = output_dir
        self.kernel: Union[PeriodicKernel, CompactKernel] = build_kernel_for(config)
        self.result = StudyResult()
        self._lock = threading.Lock()
        # validate 已保证读入的点集与 n_list、维度一致
        self._loaded_points: Optional[PointSet] = (
            PointSetCsv.read(Path(config.load_points), seed=config.master_seed) if config.load_points else None
        )

    @abstractmethod
    async def execute(self) -> StudyResult:
        """执行研究并返回记录"""

    # ---------- 数值配置 ----------

    def fourier_spec(self) -> FourierQuadratureSpec:
        return FourierQuadratureSpec(nodes_per_axis=self.config.quadrature.nodes_per_axis)

    def convolution_spec(self) -> ConvolutionSpec:
        q = self.config.quadrature
        return ConvolutionSpec(
            steps_per_radius=q.convolution_steps,
            xi_cutoff=q.xi_cutoff,
            xi_step=q.xi_step,
            tolerance=self.config.tolerance.quadrature_rel,
        )

    def surjection_spec(self) -> SurjectionSpec:
        return SurjectionSpec(
            steps_per_radius=self.config.quadrature.steps_per_radius,
            seed=self.config.master_seed,
            threads=self.config.threads,
        )

    # ---------- 实现级工具 ----------

    @property
    def is_scaled(self) -> bool:
        return self.config.model.kind == "scaled"

    @property
    def normalization(self) -> Normalization:
        return Normalization.UNIT if self.is_scaled else Normalization.DIVIDED_BY_N

    def seed_for(self, index: int) -> int:
        return realization_seed(self.config.master_seed, index)

    def seed_range(self) -> str:
        return f"{self.config.master_seed}:0-{self.config.realizations - 1}"

    def sample_points(self, n: int, seed: int, gamma: Optional[float] = None) -> PointSet:
        if self._loaded_points is not None:
            return self._loaded_points
        if self.is_scaled:
            return sample_for_scaled_model(
                n, self.kernel.d, gamma if gamma is not None else self.config.model.gamma, seed
            )
        return sample_torus(n, self.kernel.d, seed)

    def build_matrix(self, pts: PointSet, periodic_extension: Optional[bool] = None) -> HermitianMatrix:
        if self.is_scaled:
            periodic = self.config.model.periodic_extension if periodic_extension is None else periodic_extension
            return build_B(self.kernel, pts, periodic_extension=periodic)
        return build_A(self.kernel, pts)

    def solve(self, H: HermitianMatrix) -> SpectralSample:
        """求特征值；严格模式下同时抽查残差并校验迹恒等式"""
        sample = eigenvalues(H, self.normalization, check_residuals=self.config.strict or None)
        with self._lock:
            self.result.eigensolves += 1
        if self.config.strict:
            verify_trace_identities(H, sample)
        return sample

    def spectrum_of(
        self, n: int, index: int, gamma: Optional[float] = None
    ) -> Tuple[PointSet, HermitianMatrix, SpectralSample]:
        seed = self.seed_for(index)
        pts = self.sample_points(n, seed, gamma)
        H = self.build_matrix(pts)
        sample = self.solve(H)
        self.maybe_write(n, index, pts, sample, tag="" if gamma is None else f"_g{gamma:g}", matrix=H)
        return pts, H, sample

    def write_points(self, n: int, pts: PointSet, tag: str = "") -> None:
        path = self.output_dir / f"points_n{n}{tag}.csv"
        PointSetCsv.write(pts, path)
        self._artifact(path)

    def maybe_write(
        self,
        n: int,
        index: int,
        pts: PointSet,
        sample: SpectralSample,
        tag: str = "",
        matrix: Optional[HermitianMatrix] = None,
    ) -> None:
        if self.config.write_points and index == 0:
            self.write_points(n, pts, tag)
        if self.config.write_matrices and index == 0 and matrix is not None:
            path = self.output_dir / f"matrix_n{n}{tag}.bin"
            dump_matrix(matrix, path)
            self._artifact(path)
        if self.config.write_spectra:
            path = self.output_dir / f"spectrum_n{n}{tag}_{index}.csv"
            ResultWriter.write_spectrum(sample.eigenvalues, index, path, self.command)
            self._artifact(path)

    def _artifact(self, path: Path) -> None:
        with self._lock:
            self.result.artifacts.append(str(path))

    async def fan_out(self, task: Callable[[int], T], label: str = "") -> List[Optional[T]]:
        """
        按实现编号并发执行 task(index)

        求解失败（SpectralSolverError / 严格模式恒等式失败）的实现记为 None 并计数。
        """
        semaphore = asyncio.Semaphore(self.config.threads)

        async def run_with_semaphore(index: int) -> Optional[T]:
            async with semaphore:
                try:
                    return await asyncio.to_thread(task, index)
                except (SpectralSolverError, IdentityCheckError) as e:
                    logger.error("实现 %s%s 失败，已跳过: %s", index, label, e.message)
                    self.result.solver_failures += 1
                    return None

        results = await asyncio.gather(*(run_with_semaphore(i) for i in range(self.config.realizations)))
        logger.debug("%s%s 完成 %s 次实现", self.command, label, len(results))
        return list(results)

    @staticmethod
    def statistics(values: Sequence[Optional[float]]) -> RunningStatistics:
        """按实现顺序归约，跳过失败的实现"""
        return RunningStatistics.of(v for v in values if v is not None)

    @staticmethod
    def finite(values: Sequence[Optional[T]]) -> List[T]:
        return [v for v in values if v is not None]

    def write_artifact_table(self, name: str, rows: List[dict], columns: Sequence[str]) -> None:
        path = self.output_dir / name
        ResultWriter.write_table(rows, columns, path, self.command)
        self._artifact(path)

    def write_artifact_json(self, name: str, payload: Dict[str, Any]) -> None:
        path = self.output_dir / name
        ResultWriter.write_json(payload, path)
        self._artifact(path)

    @staticmethod
    def non_increasing(values: Sequence[float], slack: Sequence[float]) -> bool:
        """相邻两项满足 v[i+1] <= v[i] + slack[i+1]"""
        return all(values[i + 1] <= values[i] + slack[i + 1] for i in range(len(values) - 1))

    @staticmethod
    def normalized_moment(sample: SpectralSample, m: int) -> float:
        """μ_n(P_m) 或 ν_n(P_m)"""
        values = sample.normalized()
        if sample.normalization == Normalization.UNIT:
            return float(np.mean(values**m))
        return float(np.sum(values**m))
