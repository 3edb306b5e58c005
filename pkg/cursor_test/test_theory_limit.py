"""
单元测试：环面模型的极限测度、矩与谱间隙。
"""
from __future__ import annotations

import unittest

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError
from ermlab.domain.kernels import BoxIndicatorKernel, FourierSeriesKernel
from ermlab.domain.theory import (
    MomentMethod,
    box_spectral_gap,
    expected_mu_n_second_moment,
    finite_size_correction,
    limit_measure,
    mu_moment,
    positivity_certificate,
)


class TestLimitMeasure(unittest.TestCase):
    """μ = Σ_k δ_{F̂(k)}"""

    def setUp(self) -> None:
        self.box = BoxIndicatorKernel(0.25)

    def test_parseval_closes_second_moment(self) -> None:
        measure = limit_measure(self.box, 64)
        report = mu_moment(self.box, 2, 64)
        self.assertEqual(report.method, MomentMethod.CLOSED_FORM)
        self.assertAlmostEqual(report.value + measure.tail_bound, 0.5, places=12)
        self.assertGreater(measure.tail_bound, 0.0)
        self.assertLessEqual(report.error_estimate, measure.tail_bound)

    def test_third_moment_is_convolution_power(self) -> None:
        self.assertAlmostEqual(mu_moment(self.box, 3, 64).value, 0.1875, delta=1e-4)

    def test_first_moment_warns_on_conditional_convergence(self) -> None:
        report = mu_moment(self.box, 1, 64)
        self.assertAlmostEqual(report.value, 1.0, delta=0.02)
        self.assertTrue(report.warnings, "盒核系数不绝对可和，应当带告警")

    def test_atom_windows(self) -> None:
        measure = limit_measure(self.box, 16)
        self.assertEqual(measure.count_in(0.45, 0.55), 1)
        self.assertEqual(measure.count_in(0.29, 0.34), 2, "F̂(±1) = 1/π 为二重原子")
        self.assertEqual(len(measure.atoms), 33)

    def test_invalid_arguments(self) -> None:
        with self.assertRaises(InvalidParameterError):
            limit_measure(self.box, -1)
        with self.assertRaises(InvalidParameterError):
            mu_moment(self.box, 0, 8)
        with self.assertRaises(InvalidParameterError):
            finite_size_correction(self.box, 1, 8)


class TestFiniteSize(unittest.TestCase):
    """有限 n 的二阶矩与修正项"""

    def test_expected_second_moment_exact(self) -> None:
        self.assertAlmostEqual(expected_mu_n_second_moment(BoxIndicatorKernel(0.25), 10), 0.55)
        with self.assertRaises(InvalidParameterError):
            expected_mu_n_second_moment(BoxIndicatorKernel(0.25), 0)

    def test_second_order_correction_matches_exact_formula(self) -> None:
        # n(E μ_n(P₂) - μ(P₂)) = F(0)² - ∫F² = 0.5
        correction = finite_size_correction(BoxIndicatorKernel(0.25), 2, 64)
        self.assertAlmostEqual(correction, 0.5, delta=0.02)

    def test_correction_uses_exact_first_moment(self) -> None:
        # 截断 K=16 时部分和 Σ F̂(k) 约 0.98，修正项仍按 F(0) = 1 计算
        box = BoxIndicatorKernel(0.25)
        partial = mu_moment(box, 1, 16).value
        self.assertGreater(abs(partial - 1.0), 0.01)
        expected = 1.0 - mu_moment(box, 2, 16).value
        self.assertAlmostEqual(finite_size_correction(box, 2, 16), expected, places=12)


class TestGapAndPositivity(unittest.TestCase):
    """谱间隙与半正定判据"""

    def test_box_gap(self) -> None:
        exact, asymptotic = box_spectral_gap(0.25)
        self.assertAlmostEqual(exact, 0.5 - 1.0 / np.pi, places=12)
        small_exact, small_asymptotic = box_spectral_gap(0.01)
        self.assertAlmostEqual(small_exact / small_asymptotic, 1.0, delta=1e-3)
        self.assertGreater(asymptotic, 0.0)
        with self.assertRaises(InvalidParameterError):
            box_spectral_gap(0.75)

    def test_box_is_not_positive(self) -> None:
        positive, minimum, where = positivity_certificate(BoxIndicatorKernel(0.25), 8)
        self.assertFalse(positive)
        self.assertAlmostEqual(minimum, -1.0 / (3.0 * np.pi), places=12)
        self.assertEqual(abs(where[0]), 3)

    def test_positive_series_certified(self) -> None:
        kernel = FourierSeriesKernel({(0,): 1.0, (1,): 0.5, (-1,): 0.5})
        positive, minimum, _ = positivity_certificate(kernel, 4)
        self.assertTrue(positive)
        self.assertEqual(minimum, 0.0)


if __name__ == "__main__":
    unittest.main()
