"""
点集 CSV 读写
表头 x1..xd，每行一个点；读取时重新校验坐标范围。
"""
import logging
from pathlib import Path

import pandas as pd

from ermlab.domain.pointset.models import ModelKind, PointSet

logger = logging.getLogger(__name__)


class PointSetCsv:
    """点集 CSV 读写器"""

    @staticmethod
    def write(pts: PointSet, file_path: Path) -> Path:
        """
        写出点集坐标

        Args:
            pts: 点集
            file_path: 目标文件

        Returns:
            Path: 写出的文件路径
        """
        file_path.parent.mkdir(parents=True, exist_ok=True)
        columns = [f"x{i + 1}" for i in range(pts.d)]
        frame = pd.DataFrame(pts.coords, columns=columns)
        frame.to_csv(file_path, index=False, float_format="%.17g")
        logger.debug("写出点集 %s (n=%s, d=%s)", file_path, pts.n, pts.d)
        return file_path

    @staticmethod
    def read(file_path: Path, seed: int = 0) -> PointSet:
        """
        读取点集（按环面模型）

        Raises:
            FileNotFoundError: 文件不存在
            InvalidParameterError: 坐标越界
        """
        if not file_path.exists():
            raise FileNotFoundError(f"点集文件不存在: {file_path}")
        frame = pd.read_csv(file_path)
        return PointSet(coords=frame.to_numpy(dtype=float), seed=seed, model=ModelKind.TORUS)
