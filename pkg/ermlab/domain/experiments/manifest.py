"""
实验结果记录与清单

每条记录的 passed 只由记录自身的数字决定：|empirical_mean - theory| <= tolerance。
纯理论交叉检查（没有蒙特卡洛样本）把第二条计算路线的结果放在 empirical_mean，realizations = 0。
"""
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

RECORD_COLUMNS = [
    "quantity",
    "m",
    "gamma",
    "n",
    "theory",
    "empirical_mean",
    "empirical_se",
    "realizations",
    "tolerance",
    "passed",
    "seed_range",
]


@dataclass
class ResultRecord:
    """一条理论-经验对照"""

    quantity: str
    theory: float
    empirical_mean: float
    tolerance: float
    empirical_se: float = 0.0
    realizations: int = 0
    m: Optional[int] = None
    gamma: Optional[float] = None
    n: Optional[int] = None
    seed_range: str = ""
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        self.passed = self.recompute_passed()

    def recompute_passed(self) -> bool:
        if any(math.isnan(x) for x in (self.theory, self.empirical_mean, self.tolerance)):
            return False
        return abs(self.empirical_mean - self.theory) <= self.tolerance

    @classmethod
    def monte_carlo(
        cls,
        quantity: str,
        theory: float,
        mean: float,
        se: float,
        realizations: int,
        se_multiple: float,
        floor: float = 0.0,
        **provenance: Any,
    ) -> "ResultRecord":
        """容差 = se_multiple·SE（不低于 floor）"""
        return cls(
            quantity=quantity,
            theory=theory,
            empirical_mean=mean,
            empirical_se=se,
            realizations=realizations,
            tolerance=max(se_multiple * se, floor),
            **provenance,
        )

    @classmethod
    def relative(
        cls, quantity: str, theory: float, value: float, rel_tol: float, **provenance: Any
    ) -> "ResultRecord":
        """容差 = rel_tol·|theory|"""
        return cls(
            quantity=quantity,
            theory=theory,
            empirical_mean=value,
            tolerance=rel_tol * max(abs(theory), 1e-300),
            **provenance,
        )

    @classmethod
    def trend(cls, quantity: str, holds: bool, **provenance: Any) -> "ResultRecord":
        """单调趋势判定：theory = 1 表示期望成立"""
        return cls(quantity=quantity, theory=1.0, empirical_mean=1.0 if holds else 0.0, tolerance=0.0, **provenance)

    def to_row(self) -> Dict[str, Any]:
        row = asdict(self)
        return {key: row[key] for key in RECORD_COLUMNS}


@dataclass
class StudyResult:
    """一次研究的产出"""

    records: List[ResultRecord] = field(default_factory=list)
    artifacts: List[str] = field(default_factory=list)
    solver_failures: int = 0
    eigensolves: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ResultManifest:
    """清单：配置回显、记录、耗时与求解统计、产物路径"""

    command: str
    config: Dict[str, Any]
    records: List[ResultRecord]
    wall_clock_seconds: float
    solver_failures: int
    eigensolves: int
    artifacts: List[str]
    version: str

    @property
    def all_passed(self) -> bool:
        return all(record.passed for record in self.records)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "command": self.command,
            "config": self.config,
            "records": [record.to_row() for record in self.records],
            "wall_clock_seconds": self.wall_clock_seconds,
            "solver_statistics": {
                "eigensolves": self.eigensolves,
                "solver_failures": self.solver_failures,
            },
            "artifacts": self.artifacts,
            "all_passed": self.all_passed,
        }
