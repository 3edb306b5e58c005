"""
结果表与 JSON 写出

results.csv 首行为版本注释 "# erm-spectra v<semver> <command>"，正文不含时间戳，
相同配置的串行运行逐字节一致；时间戳只写入 metadata.json。
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

import numpy as np
import pandas as pd

from ermlab import __version__

logger = logging.getLogger(__name__)


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _to_jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, complex):
        return {"real": value.real, "imag": value.imag}
    return value


class ResultWriter:
    """实验产物写出器"""

    @staticmethod
    def header_line(command: str) -> str:
        return f"# erm-spectra v{__version__} {command}"

    @staticmethod
    def write_table(
        rows: List[Dict[str, Any]], columns: Sequence[str], file_path: Path, command: str
    ) -> Path:
        """
        写出带版本注释的 CSV

        Args:
            rows: 记录列表
            columns: 列顺序
            file_path: 目标文件
            command: 实验命令（写入注释行）
        """
        file_path.parent.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame(rows, columns=list(columns))
        with open(file_path, "w", encoding="utf-8", newline="") as f:
            f.write(ResultWriter.header_line(command) + "\n")
            frame.to_csv(f, index=False, float_format="%.12g", lineterminator="\n")
        logger.info("写出结果表 %s (%s 行)", file_path, len(frame))
        return file_path

    @staticmethod
    def read_table(file_path: Path) -> pd.DataFrame:
        return pd.read_csv(file_path, comment="#")

    @staticmethod
    def write_spectrum(
        eigenvalues: np.ndarray, realization: int, file_path: Path, command: str
    ) -> Path:
        """单次实现的特征值，每行一个，带实现编号"""
        rows = [{"realization": realization, "eigenvalue": float(v)} for v in eigenvalues]
        return ResultWriter.write_table(rows, ["realization", "eigenvalue"], file_path, command)

    @staticmethod
    def write_json(payload: Dict[str, Any], file_path: Path) -> Path:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(_to_jsonable(payload), f, ensure_ascii=False, indent=2, sort_keys=False)
        return file_path
