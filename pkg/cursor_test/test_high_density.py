"""
单元测试：ν_γ 的满射展开、高密度渐近与游走积分。
"""
from __future__ import annotations

import unittest

import numpy as np

from ermlab.domain.exceptions import CombinatoricsLimitError, InvalidParameterError, KernelPreconditionError
from ermlab.domain.kernels import CompactBoxKernel, CustomCompactKernel, level_set_density
from ermlab.domain.spectra import Normalization, SpectralSample
from ermlab.domain.theory import (
    MomentMethod,
    SurjectionSpec,
    high_density_moment,
    high_density_scaled_measure,
    nu_gamma_moment,
    second_order_term,
    second_order_term_from_level_set,
)
from ermlab.domain.theory.surjection_integrals import (
    WalkGraph,
    grid_walk_integral,
    group_by_walk_shape,
    qmc_walk_integral,
)


def _nu_box(gamma: float, m: int) -> float:
    """r = 1/4 的一维盒核：ν_γ(P₂) = 1 + γ/2，ν_γ(P₃) = 1 + 3γ/2 + 3γ²/16"""
    return {1: 1.0, 2: 1.0 + 0.5 * gamma, 3: 1.0 + 1.5 * gamma + 0.1875 * gamma**2}[m]


class TestWalkIntegrals(unittest.TestCase):
    """单个满射类的闭合游走积分"""

    def setUp(self) -> None:
        self.box = CompactBoxKernel(0.25)

    def test_walk_graph_edges(self) -> None:
        graph = WalkGraph.from_representative((1, 1, 2))
        self.assertEqual(graph.p, 2)
        self.assertEqual(graph.self_loops, 1)
        self.assertEqual(graph.edges[(1, 2)], 1)
        self.assertEqual(graph.edges[(2, 1)], 1)

    def test_grouping_merges_identical_shapes(self) -> None:
        grouped = group_by_walk_shape([(1, 1, 2), (1, 2, 2), (1, 2, 3), (1, 2, 1)])
        self.assertEqual(sum(grouped.values()), 4)
        self.assertEqual(grouped, {0: 3, 2: 1})

    def test_grid_triangle_walk(self) -> None:
        value, steps = grid_walk_integral(self.box, (1, 2, 3), 100)
        self.assertEqual(steps, 100)
        self.assertAlmostEqual(value.real, 0.1875, delta=0.01 * 0.1875)

    def test_grid_loop_walk(self) -> None:
        value, _ = grid_walk_integral(self.box, (1, 1, 2), 100)
        self.assertAlmostEqual(value.real, 0.5, delta=0.005)

    def test_single_vertex_walk(self) -> None:
        value, _ = grid_walk_integral(self.box, (1, 1, 1), 100)
        self.assertEqual(value, 1.0)

    def test_qmc_two_dimensional_back_and_forth(self) -> None:
        value, se = qmc_walk_integral(CompactBoxKernel(0.25, d=2), (1, 2), 10, 4, seed=0)
        self.assertAlmostEqual(value.real, 0.25, places=12)
        self.assertAlmostEqual(se, 0.0, places=12)


class TestNuGammaMoment(unittest.TestCase):
    """满射展开的 ν_γ(P_m)"""

    def test_one_dimensional_box(self) -> None:
        box = CompactBoxKernel(0.25)
        for gamma in (0.5, 1.0, 2.0):
            for m in (1, 2, 3):
                with self.subTest(gamma=gamma, m=m):
                    report = nu_gamma_moment(box, gamma, m)
                    expected = _nu_box(gamma, m)
                    self.assertAlmostEqual(report.value, expected, delta=0.01 * expected)

    def test_coefficients_and_reevaluation(self) -> None:
        report = nu_gamma_moment(CompactBoxKernel(0.25), 1.0, 3)
        self.assertEqual(report.method, MomentMethod.SURJECTION_QUADRATURE)
        self.assertEqual(sorted(report.coefficients), [0, 1, 2])
        self.assertAlmostEqual(report.coefficients[0], 1.0)
        self.assertAlmostEqual(report.coefficients[1], 1.5, delta=0.015)
        self.assertAlmostEqual(report.coefficients[2], 0.1875, delta=0.002)
        self.assertAlmostEqual(report.evaluate_at(1000.0), _nu_box(1000.0, 3), delta=0.01 * _nu_box(1000.0, 3))
        self.assertAlmostEqual(sum(report.breakdown.values()), report.value, places=12)

    def test_continuous_in_gamma(self) -> None:
        # 同一 m 下 ν_γ(P_m) 是 γ 的多项式：增量随步长线性收缩
        box = CompactBoxKernel(0.25)
        spec = SurjectionSpec(steps_per_radius=40)
        base = nu_gamma_moment(box, 1.0, 3, spec).value
        # 1.5 + 2·0.1875·γ 在 [1, 1.1] 上的上界
        lipschitz = 1.05 * (1.5 + 0.375 * 1.1)
        previous = float("inf")
        for h in (0.1, 0.01, 0.001):
            with self.subTest(h=h):
                shifted = nu_gamma_moment(box, 1.0 + h, 3, spec).value
                step = abs(shifted - base)
                self.assertLessEqual(step, lipschitz * h)
                self.assertLess(step, previous)
                previous = step
        nearby = [nu_gamma_moment(box, g, 2, spec).value for g in np.linspace(0.9, 1.1, 5)]
        self.assertTrue(np.all(np.diff(nearby) > 0), "m=2 时 ν_γ 随 γ 严格增")
        self.assertLess(float(np.max(np.abs(np.diff(nearby)))), 0.05 * 0.5 * 1.05)

    def test_threaded_matches_serial(self) -> None:
        box = CompactBoxKernel(0.25)
        serial = nu_gamma_moment(box, 1.0, 4, SurjectionSpec(steps_per_radius=40))
        threaded = nu_gamma_moment(box, 1.0, 4, SurjectionSpec(steps_per_radius=40, threads=4))
        self.assertEqual(serial.value, threaded.value)

    def test_two_dimensional_second_moment(self) -> None:
        report = nu_gamma_moment(CompactBoxKernel(0.25, d=2), 3.0, 2, SurjectionSpec(samples_log2=10))
        self.assertAlmostEqual(report.value, 1.0 + 0.25 * 3.0, places=10)

    def test_invalid_arguments(self) -> None:
        box = CompactBoxKernel(0.25)
        with self.assertRaises(InvalidParameterError):
            nu_gamma_moment(box, 0.0, 2)
        with self.assertRaises(InvalidParameterError):
            nu_gamma_moment(box, 1.0, 0)
        with self.assertRaises(CombinatoricsLimitError):
            nu_gamma_moment(box, 1.0, 99)
        skew = CustomCompactKernel(lambda x: x[..., 0], d=1, support_radius=0.25, hermitian=False)
        with self.assertRaises(KernelPreconditionError):
            nu_gamma_moment(skew, 1.0, 2)


class TestHighDensity(unittest.TestCase):
    """γ → ∞ 的主阶与次阶"""

    def setUp(self) -> None:
        self.box = CompactBoxKernel(0.25)

    def test_leading_term(self) -> None:
        self.assertAlmostEqual(high_density_moment(self.box, 10.0, 3), 18.75, places=10)
        self.assertEqual(high_density_moment(self.box, 10.0, 1), 1.0)
        ratio = _nu_box(1000.0, 3) / high_density_moment(self.box, 1000.0, 3)
        self.assertAlmostEqual(ratio, 1.008, delta=1e-4)

    def test_second_order_term(self) -> None:
        self.assertAlmostEqual(second_order_term(self.box, 1.0, 3), 1.5, places=10)
        self.assertAlmostEqual(second_order_term(self.box, 7.0, 2), 1.0, places=10)
        with self.assertRaises(InvalidParameterError):
            second_order_term(self.box, 1.0, 1)

    def test_second_order_term_from_level_set(self) -> None:
        psi = level_set_density(self.box)
        self.assertAlmostEqual(second_order_term_from_level_set(psi, 1.0, 3), 1.5, delta=0.03)

    def test_scaled_measure_mass(self) -> None:
        n, gamma_n = 200, 5.0
        values = np.random.default_rng(0).uniform(-0.1, 0.9, size=n) * gamma_n
        sample = SpectralSample(values, Normalization.UNIT)
        masses = high_density_scaled_measure(sample, gamma_n, np.linspace(-0.2, 1.0, 13))
        self.assertEqual(masses.shape, (12,))
        self.assertAlmostEqual(float(masses.sum()), gamma_n, places=10)

    def test_scaled_measure_last_bin_half_open(self) -> None:
        sample = SpectralSample(np.array([0.0, 1.0, 2.0]), Normalization.UNIT)
        masses = high_density_scaled_measure(sample, 1.0, np.array([0.0, 1.0, 2.0]))
        np.testing.assert_allclose(masses, [1.0 / 3.0, 1.0 / 3.0])
        with self.assertRaises(InvalidParameterError):
            high_density_scaled_measure(sample, 0.0, np.array([0.0, 1.0]))


if __name__ == "__main__":
    unittest.main()
