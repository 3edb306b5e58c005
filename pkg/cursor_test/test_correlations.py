"""
单元测试：特征值相关量 M_m 与 α_{m,k}。
"""
from __future__ import annotations

import unittest

from ermlab.domain.exceptions import InvalidParameterError, KernelPreconditionError
from ermlab.domain.kernels import BoxIndicatorKernel, PureModeKernel
from ermlab.domain.theory import correlation_M2, correlation_Mm_mc, correlation_Mm_quadrature


class TestCorrelations(unittest.TestCase):
    """r = 1/4 的一维盒核：M₂ = -1/2，M₃ = 2·μ(P₃) = 3/8"""

    def setUp(self) -> None:
        self.box = BoxIndicatorKernel(0.25)

    def test_second_correlation_closed_form(self) -> None:
        self.assertAlmostEqual(correlation_M2(self.box), -0.5)

    def test_second_correlation_monte_carlo(self) -> None:
        mean, se = correlation_Mm_mc(self.box, 2, samples=200_000, seed=1)
        self.assertGreater(se, 0.0)
        self.assertAlmostEqual(mean, -0.5, delta=4 * se)

    def test_third_correlation_quadrature(self) -> None:
        self.assertAlmostEqual(correlation_Mm_quadrature(self.box, 3), 0.375, delta=0.01 * 0.375)

    def test_third_correlation_monte_carlo(self) -> None:
        mean, se = correlation_Mm_mc(self.box, 3, samples=200_000, seed=2)
        self.assertAlmostEqual(mean, 0.375, delta=4 * se + 0.002)

    def test_mc_is_reproducible(self) -> None:
        first = correlation_Mm_mc(self.box, 2, samples=5_000, seed=7)
        second = correlation_Mm_mc(self.box, 2, samples=5_000, seed=7)
        self.assertEqual(first, second)

    def test_power_k_quadrature_matches_mc(self) -> None:
        grid = correlation_Mm_quadrature(self.box, 2, nodes=2048, k=2)
        mean, se = correlation_Mm_mc(self.box, 2, k=2, samples=200_000, seed=3)
        # det(Ā²) = det(Ā)² = F⁴，故 α_{2,2} = ∫F⁴ = 1/2
        self.assertAlmostEqual(grid, 0.5, delta=1e-3)
        self.assertAlmostEqual(mean, grid, delta=4 * se + 1e-3)

    def test_complex_kernel_rejected(self) -> None:
        with self.assertRaises(KernelPreconditionError):
            correlation_M2(PureModeKernel((1,)))

    def test_invalid_arguments(self) -> None:
        with self.assertRaises(InvalidParameterError):
            correlation_Mm_quadrature(BoxIndicatorKernel(0.25, d=2), 3)
        with self.assertRaises(InvalidParameterError):
            correlation_Mm_mc(self.box, 1)
        with self.assertRaises(InvalidParameterError):
            correlation_Mm_quadrature(self.box, 1)


if __name__ == "__main__":
    unittest.main()
