"""
矩阵二进制转储

布局（小端）：int64 n，uint8 is_real，随后 n*n 个行主序元素；
is_real=1 时元素为 float64，否则为 complex128。仅供外部检查，不承诺兼容。
"""
import logging
from pathlib import Path
from typing import Tuple

import numpy as np

from ermlab.domain.matrices.models import HermitianMatrix

logger = logging.getLogger(__name__)

_HEADER = np.dtype([("n", "<i8"), ("is_real", "u1")])


def dump_matrix(matrix: HermitianMatrix, file_path: Path) -> Path:
    """按上述布局写出矩阵"""
    file_path.parent.mkdir(parents=True, exist_ok=True)
    header = np.array([(matrix.n, 1 if matrix.is_real else 0)], dtype=_HEADER)
    body_dtype = "<f8" if matrix.is_real else "<c16"
    with open(file_path, "wb") as f:
        f.write(header.tobytes())
        f.write(np.ascontiguousarray(matrix.entries, dtype=body_dtype).tobytes())
    logger.debug("写出矩阵 %s (n=%s, is_real=%s)", file_path, matrix.n, matrix.is_real)
    return file_path


def load_matrix(file_path: Path) -> Tuple[np.ndarray, bool]:
    """读回 (entries, is_real)"""
    raw = file_path.read_bytes()
    header = np.frombuffer(raw[: _HEADER.itemsize], dtype=_HEADER)[0]
    n, is_real = int(header["n"]), bool(header["is_real"])
    body = np.frombuffer(raw[_HEADER.itemsize :], dtype="<f8" if is_real else "<c16")
    return body.reshape(n, n), is_real
