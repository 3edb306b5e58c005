"""
谱半径的 Poisson 上界

j(n) 满足 n·P(Po(γ) >= j+1) <= 1 < n·P(Po(γ) >= j)；尾概率用 mpmath 的正则化不完全 Γ
在扩展精度下求得，n 到 10⁹ 仍精确。
"""
import logging
from dataclasses import dataclass
from math import e, log
from typing import Optional

import mpmath
from scipy import stats

from ermlab.app.config import settings
from ermlab.domain.exceptions import IdentityCheckError, InvalidParameterError

logger = logging.getLogger(__name__)

_PRECISION_DIGITS = 50


@dataclass
class PoissonBound:
    """j(n) 及其两侧尾概率"""

    j: int
    n: int
    gamma: float
    tail_at_j: float
    tail_at_j_plus_1: float
    degenerate: bool = False

    def bound_value(self, sup_norm: float) -> float:
        """j(n)·sup|f|"""
        return self.j * sup_norm

    def sandwich_holds(self) -> bool:
        upper = self.n * self.tail_at_j_plus_1 <= 1.0
        if self.degenerate:
            return upper
        return upper and 1.0 < self.n * self.tail_at_j


def poisson_tail(j: int, gamma: float) -> mpmath.mpf:
    """P(Po(γ) >= j)"""
    if j <= 0:
        return mpmath.mpf(1)
    with mpmath.workdps(_PRECISION_DIGITS):
        return mpmath.gammainc(j, 0, gamma, regularized=True)


def poisson_bound_j(n: int, gamma: float, strict: Optional[bool] = None) -> PoissonBound:
    """
    从 j = 0 向上扫描，返回第一个满足 n·P(Po(γ) >= j+1) <= 1 的 j

    n = 1 时 j = 0 不满足右侧严格不等式，返回 j = 0 并置 degenerate。

    Raises:
        InvalidParameterError: n < 1 或 gamma <= 0
        IdentityCheckError: 严格模式下夹逼不等式重算不成立
    """
    if n < 1:
        raise InvalidParameterError(f"n 必须 >= 1，当前: {n}")
    if not gamma > 0:
        raise InvalidParameterError(f"gamma 必须 > 0，当前: {gamma}")
    j = 0
    with mpmath.workdps(_PRECISION_DIGITS):
        n_mp = mpmath.mpf(n)
        while n_mp * poisson_tail(j + 1, gamma) > 1:
            j += 1
        tail_j = poisson_tail(j, gamma)
        tail_next = poisson_tail(j + 1, gamma)
        degenerate = not (n_mp * tail_j > 1)
    result = PoissonBound(
        j=j,
        n=n,
        gamma=float(gamma),
        tail_at_j=float(tail_j),
        tail_at_j_plus_1=float(tail_next),
        degenerate=degenerate,
    )
    if degenerate:
        logger.warning("n=%s 时 j=0 不满足 1 < n·P(Po(γ) >= 0)，返回退化结果", n)

    check = settings.STRICT_CHECKS if strict is None else strict
    if check:
        # 独立用 scipy 的生存函数重算两侧尾概率
        sf_j = float(stats.poisson.sf(j - 1, gamma)) if j > 0 else 1.0
        sf_next = float(stats.poisson.sf(j, gamma))
        upper_ok = n * sf_next <= 1.0 * (1 + 1e-12)
        lower_ok = degenerate or n * sf_j > 1.0 * (1 - 1e-12)
        if not (upper_ok and lower_ok):
            raise IdentityCheckError(
                f"Poisson 夹逼不成立: n={n}, gamma={gamma}, j={j}, "
                f"n·P(>=j)={n * sf_j:.6g}, n·P(>=j+1)={n * sf_next:.6g}"
            )
    return result


def poisson_tail_upper_bound(k: float, gamma: float) -> float:
    """
    P(Po(γ) >= k) <= exp(-(k/2) ln(k/γ))，k >= e²γ

    Raises:
        InvalidParameterError: k < e²γ
    """
    if k < e**2 * gamma:
        raise InvalidParameterError(f"上界要求 k >= e²γ，当前: k={k}, gamma={gamma}")
    return float(mpmath.exp(-(k / 2.0) * mpmath.log(k / gamma)))


def asymptotic_j_bound(n: int) -> float:
    """3 ln n / ln ln n"""
    if n < 16:
        raise InvalidParameterError(f"渐近界要求 ln ln n > 0 且有意义，当前 n={n}")
    return 3.0 * log(n) / log(log(n))
