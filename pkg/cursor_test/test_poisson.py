"""
单元测试：谱半径的 Poisson 上界。
"""
from __future__ import annotations

import unittest
from math import exp, factorial

from ermlab.domain.exceptions import InvalidParameterError
from ermlab.domain.theory import asymptotic_j_bound, poisson_bound_j, poisson_tail, poisson_tail_upper_bound


def _tail_by_summation(j: int, gamma: float) -> float:
    return 1.0 - sum(exp(-gamma) * gamma**i / factorial(i) for i in range(j))


class TestPoissonBound(unittest.TestCase):
    """j(n) 的扫描与夹逼"""

    def test_known_value(self) -> None:
        bound = poisson_bound_j(100, 1.0)
        self.assertEqual(bound.j, 4)
        self.assertTrue(bound.sandwich_holds())
        self.assertFalse(bound.degenerate)
        self.assertEqual(bound.bound_value(2.0), 8.0)

    def test_tail_matches_direct_summation(self) -> None:
        for j, gamma in ((1, 1.0), (4, 1.0), (5, 2.5), (10, 3.0)):
            with self.subTest(j=j, gamma=gamma):
                self.assertAlmostEqual(float(poisson_tail(j, gamma)), _tail_by_summation(j, gamma), places=12)
        self.assertEqual(float(poisson_tail(0, 1.0)), 1.0)

    def test_monotone_in_n(self) -> None:
        js = [poisson_bound_j(n, 2.0).j for n in (10, 100, 1_000, 10_000, 100_000, 1_000_000)]
        self.assertEqual(js, sorted(js))
        for n in (10, 1_000, 1_000_000_000):
            with self.subTest(n=n):
                self.assertTrue(poisson_bound_j(n, 2.0).sandwich_holds())

    def test_single_point_is_degenerate(self) -> None:
        bound = poisson_bound_j(1, 1.0)
        self.assertEqual(bound.j, 0)
        self.assertTrue(bound.degenerate)
        self.assertTrue(bound.sandwich_holds())

    def test_strict_mode_cross_check(self) -> None:
        bound = poisson_bound_j(1_000, 2.0, strict=True)
        self.assertGreater(bound.j, 0)

    def test_invalid_arguments(self) -> None:
        with self.assertRaises(InvalidParameterError):
            poisson_bound_j(0, 1.0)
        with self.assertRaises(InvalidParameterError):
            poisson_bound_j(10, 0.0)


class TestTailBounds(unittest.TestCase):
    """尾概率上界与 j(n) 的渐近界"""

    def test_upper_bound_dominates_tail(self) -> None:
        for k, gamma in ((20.0, 2.0), (40.0, 5.0)):
            with self.subTest(k=k, gamma=gamma):
                self.assertLessEqual(float(poisson_tail(int(k), gamma)), poisson_tail_upper_bound(k, gamma))

    def test_upper_bound_precondition(self) -> None:
        with self.assertRaises(InvalidParameterError):
            poisson_tail_upper_bound(10.0, 2.0)

    def test_asymptotic_bound_at_large_n(self) -> None:
        n = 1_000_000
        self.assertLessEqual(poisson_bound_j(n, 1.0).j, asymptotic_j_bound(n))
        with self.assertRaises(InvalidParameterError):
            asymptotic_j_bound(10)


if __name__ == "__main__":
    unittest.main()
