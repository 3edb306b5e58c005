"""
领域异常定义

所有模块共用的异常层次；上层（实验运行器、CLI）按类型区分配置错误与求解失败。
"""
from typing import Any, Dict, List, Optional


class ErmLabError(Exception):
    """ERM 实验室基础异常。"""

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


class InvalidParameterError(ErmLabError):
    """参数不满足操作前置条件。"""


class DimensionMismatchError(ErmLabError):
    """维度不一致（核与点集、两个点之间）。"""

    def __init__(self, expected: int, actual: int, what: str = "维度") -> None:
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}不一致：期望 {expected}，实际 {actual}")


class KernelPreconditionError(ErmLabError):
    """核不满足操作要求（非厄米、复值、支撑越界等）。"""


class QuadratureError(ErmLabError):
    """数值求积失败（出现非有限值）。"""


class CombinatoricsLimitError(ErmLabError):
    """组合枚举超出上限。"""

    def __init__(self, m: int, cap: int) -> None:
        self.m = m
        self.cap = cap
        super().__init__(f"m={m} 超出枚举上限 {cap}")


class SpectralSolverError(ErmLabError):
    """特征值求解失败，附带矩阵来源信息。"""

    def __init__(self, message: str, provenance: Optional[Dict[str, Any]] = None) -> None:
        self.provenance = provenance or {}
        super().__init__(f"{message}（来源：{self.provenance}）")


class IdentityCheckError(ErmLabError):
    """严格模式下恒等式校验失败。"""


class ConfigValidationError(ErmLabError):
    """实验配置校验失败，附带诊断列表。"""

    def __init__(self, diagnostics: List[Any]) -> None:
        self.diagnostics = diagnostics
        joined = "; ".join(str(d) for d in diagnostics)
        super().__init__(f"实验配置校验失败：{joined}")


class UnknownCommandError(ErmLabError):
    """未注册的实验命令。"""

    def __init__(self, command: str, available: List[str]) -> None:
        self.command = command
        super().__init__(f"未知的实验命令：{command}，可选: {available}")


class UnknownKernelError(ErmLabError):
    """未注册的核名称。"""

    def __init__(self, name: str, available: List[str]) -> None:
        self.name = name
        super().__init__(f"未知的核类型：{name}，可选: {available}")
