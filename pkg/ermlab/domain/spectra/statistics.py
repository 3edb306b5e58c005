"""
可合并的流式统计量（count / mean / M2）

merge 采用成对合并公式，满足结合律，串行与分块并行的归约结果一致（至浮点舍入）。
"""
from dataclasses import dataclass
from typing import Any, Dict, Iterable

import numpy as np


@dataclass
class RunningStatistics:
    """样本均值与方差的累加器"""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def push(self, value: float) -> None:
        self.count += 1
        delta = value - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (value - self.mean)

    def extend(self, values: Iterable[float]) -> "RunningStatistics":
        for value in values:
            self.push(float(value))
        return self

    def merge(self, other: "RunningStatistics") -> "RunningStatistics":
        """返回合并后的新累加器，不修改两个输入"""
        if other.count == 0:
            return RunningStatistics(self.count, self.mean, self.m2)
        if self.count == 0:
            return RunningStatistics(other.count, other.mean, other.m2)
        count = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / count
        m2 = self.m2 + other.m2 + delta**2 * self.count * other.count / count
        return RunningStatistics(count, mean, m2)

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0

    @property
    def standard_error(self) -> float:
        return float(np.sqrt(self.variance / self.count)) if self.count > 1 else 0.0

    @classmethod
    def of(cls, values: Iterable[float]) -> "RunningStatistics":
        return cls().extend(values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "count": self.count,
            "mean": self.mean,
            "variance": self.variance,
            "standard_error": self.standard_error,
        }
