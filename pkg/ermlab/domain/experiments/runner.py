"""
实验运行器

校验配置 -> 构造研究 -> asyncio 执行 -> 写出 results.csv / manifest.json / metadata.json。
manifest.json 只含确定性内容（同一配置与种子下逐字节一致），时间戳与耗时写入 metadata.json。
"""
import asyncio
import logging
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Union

from ermlab import __version__
from ermlab.app.config import settings
from ermlab.domain.exceptions import ConfigValidationError
from ermlab.domain.experiments.config import ExperimentConfig, validate
from ermlab.domain.experiments.manifest import RECORD_COLUMNS, ResultManifest
from ermlab.domain.experiments.studies import get_study_class
from ermlab.infrastructure.io.tables import ResultWriter

logger = logging.getLogger(__name__)


class ExperimentRunner:
    """单次实验的执行器"""

    def __init__(self, config: ExperimentConfig) -> None:
        self.config = config
        root = Path(config.output_dir or settings.ERM_OUTPUT_ROOT)
        self.output_dir = root / config.command

    def run(self) -> ResultManifest:
        """
        执行实验并写出产物

        Raises:
            ConfigValidationError: 配置未通过校验
        """
        diagnostics = validate(self.config)
        if diagnostics:
            raise ConfigValidationError(diagnostics)

        self.output_dir.mkdir(parents=True, exist_ok=True)
        study = get_study_class(self.config.command)(self.config, self.output_dir)
        logger.info(
            "开始实验 %s: kernel=%s, model=%s, n_list=%s, realizations=%s, seed=%s",
            self.config.command,
            self.config.kernel.name,
            self.config.model.kind,
            self.config.n_list,
            self.config.realizations,
            self.config.master_seed,
        )
        started_at = datetime.now()
        start = time.perf_counter()
        result = asyncio.run(study.execute())
        elapsed = time.perf_counter() - start

        manifest = ResultManifest(
            command=self.config.command,
            config=self.config.model_dump(mode="json"),
            records=result.records,
            wall_clock_seconds=elapsed,
            solver_failures=result.solver_failures,
            eigensolves=result.eigensolves,
            artifacts=sorted(result.artifacts),
            version=__version__,
        )
        self._write(manifest, started_at)
        passed = sum(record.passed for record in manifest.records)
        logger.info(
            "实验 %s 完成: %s/%s 条记录通过, 求解失败 %s 次, 耗时 %.2fs",
            self.config.command,
            passed,
            len(manifest.records),
            manifest.solver_failures,
            elapsed,
        )
        return manifest

    def _write(self, manifest: ResultManifest, started_at: datetime) -> None:
        results_path = self.output_dir / "results.csv"
        ResultWriter.write_table(
            [record.to_row() for record in manifest.records], RECORD_COLUMNS, results_path, manifest.command
        )
        payload = manifest.to_dict()
        # 耗时不确定，移到 metadata.json
        wall_clock = payload.pop("wall_clock_seconds")
        ResultWriter.write_json(payload, self.output_dir / "manifest.json")
        metadata: Dict[str, Any] = {
            "version": manifest.version,
            "command": manifest.command,
            "started_at": started_at.isoformat(),
            "finished_at": datetime.now().isoformat(),
            "wall_clock_seconds": wall_clock,
        }
        ResultWriter.write_json(metadata, self.output_dir / "metadata.json")


def run(config: Union[ExperimentConfig, Dict[str, Any]]) -> ResultManifest:
    """
    运行一次实验

    Raises:
        ConfigValidationError: 配置未通过校验
    """
    if not isinstance(config, ExperimentConfig):
        diagnostics = validate(config)
        if diagnostics:
            raise ConfigValidationError(diagnostics)
        config = ExperimentConfig.model_validate(config)
    return ExperimentRunner(config).run()
