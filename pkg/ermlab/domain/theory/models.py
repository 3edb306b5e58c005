"""
理论量的数据结构
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np


class MomentMethod(str, Enum):
    """矩的计算路线"""

    CLOSED_FORM = "closed_form"
    LATTICE_SUM = "lattice_sum"
    SURJECTION_QUADRATURE = "surjection_quadrature"
    HIGH_DENSITY_ASYMPTOTIC = "high_density_asymptotic"


@dataclass
class AtomicMeasure:
    """
    μ = Σ_k δ_{F̂(k)} 在 ‖k‖_∞ <= K 上的截断

    tail_bound 为 Parseval 余项 ‖F‖²₂ - Σ_{‖k‖<=K} |F̂(k)|²（截到 0）。
    """

    lattice: np.ndarray
    values: np.ndarray
    cutoff: int
    tail_bound: float
    l2_norm_sq: float

    @property
    def atoms(self) -> List[Tuple[Tuple[int, ...], Union[float, complex]]]:
        cast = complex if np.iscomplexobj(self.values) else float
        return [(tuple(int(c) for c in k), cast(v)) for k, v in zip(self.lattice, self.values)]

    def shell_max(self, radius: int) -> float:
        """‖k‖_∞ = radius 壳层上的 max|F̂(k)|"""
        shell = np.max(np.abs(self.lattice), axis=-1) == radius
        return float(np.max(np.abs(self.values[shell]))) if np.any(shell) else 0.0

    def count_in(self, a: float, b: float) -> int:
        """落在 [a, b) 内的原子个数"""
        return int(np.sum((self.values >= a) & (self.values < b)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cutoff": self.cutoff,
            "tail_bound": self.tail_bound,
            "l2_norm_sq": self.l2_norm_sq,
            "atoms": [{"k": list(k), "value": v} for k, v in self.atoms],
        }


@dataclass
class MomentReport:
    """
    矩的理论值

    breakdown 以 p 为键记录各满射阶的贡献（已乘 γ^{p-1}）；coefficients 以 γ 的幂次为键，
    value = Σ coefficients[q]·γ^q，可在任意 γ 上重算。
    """

    m: int
    value: float
    method: MomentMethod
    error_estimate: float = 0.0
    gamma: Optional[float] = None
    breakdown: Dict[int, float] = field(default_factory=dict)
    coefficients: Dict[int, float] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def evaluate_at(self, gamma: float) -> float:
        """用 γ 多项式系数重算 ν_γ(P_m)"""
        if not self.coefficients:
            return self.value
        return float(sum(c * gamma**q for q, c in self.coefficients.items()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "value": self.value,
            "method": self.method.value,
            "error_estimate": self.error_estimate,
            "gamma": self.gamma,
            "breakdown": {str(k): v for k, v in self.breakdown.items()},
            "coefficients": {str(k): v for k, v in self.coefficients.items()},
            "warnings": list(self.warnings),
        }
