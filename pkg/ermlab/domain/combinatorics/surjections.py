"""
满射 Σ_{m,p} 的等价类枚举

φ ~ φ' 当且仅当二者相差 {1..p} 的一个置换；每类取首次出现顺序的规范代表元
（限制增长串），类大小恒为 p!。
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, List, Optional, Tuple

from ermlab.app.config import settings
from ermlab.domain.exceptions import CombinatoricsLimitError, InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurjectionClass:
    """满射等价类：representative 取值 1..p，首次出现按升序"""

    representative: Tuple[int, ...]
    m: int
    p: int

    @property
    def class_size(self) -> int:
        return factorial(self.p)

    def is_canonical(self) -> bool:
        seen = 0
        for value in self.representative:
            if value > seen + 1:
                return False
            seen = max(seen, value)
        return seen == self.p and len(self.representative) == self.m


@lru_cache(maxsize=None)
def stirling2(m: int, p: int) -> int:
    """第二类 Stirling 数 S(m, p)，递推 S(m,p) = p·S(m-1,p) + S(m-1,p-1)"""
    if m == p:
        return 1
    if p == 0 or p > m:
        return 0
    return p * stirling2(m - 1, p) + stirling2(m - 1, p - 1)


def surjection_count(m: int, p: int) -> int:
    """|Σ_{m,p}| = p!·S(m,p)"""
    return factorial(p) * stirling2(m, p)


def _restricted_growth_strings(m: int, p: int) -> Iterator[Tuple[int, ...]]:
    # 逐位扩展：下一位可取 1..(当前最大值+1)，剩余位数必须足以补齐到 p
    prefix: List[int] = [1]

    def extend(current_max: int) -> Iterator[Tuple[int, ...]]:
        position = len(prefix)
        if position == m:
            if current_max == p:
                yield tuple(prefix)
            return
        remaining = m - position
        for value in range(1, min(current_max + 1, p) + 1):
            new_max = max(current_max, value)
            if p - new_max > remaining - 1:
                continue
            prefix.append(value)
            yield from extend(new_max)
            prefix.pop()

    yield from extend(1)


def iter_surjection_classes(m: int, p: int, cap: Optional[int] = None) -> Iterator[SurjectionClass]:
    """惰性枚举 Σ_{m,p} 的规范代表元"""
    cap = settings.MAX_SURJECTION_ORDER if cap is None else cap
    if m < 1:
        raise InvalidParameterError(f"m 必须 >= 1，当前: {m}")
    if p < 1 or p > m:
        raise InvalidParameterError(f"p 必须满足 1 <= p <= m，当前: m={m}, p={p}")
    if m > cap:
        raise CombinatoricsLimitError(m, cap)
    for rgs in _restricted_growth_strings(m, p):
        yield SurjectionClass(representative=rgs, m=m, p=p)


def enumerate_surjection_classes(m: int, p: int, cap: Optional[int] = None) -> List[SurjectionClass]:
    """
    枚举 Σ_{m,p} 的全部等价类

    Args:
        m: 定义域大小
        p: 值域大小，1 <= p <= m
        cap: m 的上限，默认 MAX_SURJECTION_ORDER

    Returns:
        恰好 S(m,p) 个规范代表元

    Raises:
        InvalidParameterError: p 越界
        CombinatoricsLimitError: m 超出上限
    """
    classes = list(iter_surjection_classes(m, p, cap))
    logger.debug("枚举 Σ_{%s,%s}: %s 个等价类", m, p, len(classes))
    return classes
