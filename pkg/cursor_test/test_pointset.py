"""
单元测试：环面几何与点集采样。
"""
from __future__ import annotations

import unittest

import numpy as np
from scipy import stats

from ermlab.domain.exceptions import DimensionMismatchError, InvalidParameterError
from ermlab.domain.pointset import (
    ModelKind,
    PointSet,
    TorusPoint,
    realization_seed,
    sample_for_scaled_model,
    sample_torus,
    torus_diff,
    torus_norm,
    wrap_to_torus,
)


class TestTorusGeometry(unittest.TestCase):
    """环面规范代表元"""

    def test_wrap_to_half_open_interval(self) -> None:
        x = np.array([0.5, -0.5, 0.75, -0.75, 1.25, 3.0, -2.4999])
        wrapped = wrap_to_torus(x)
        self.assertTrue(np.all(wrapped >= -0.5))
        self.assertTrue(np.all(wrapped < 0.5))
        np.testing.assert_allclose(wrapped[:6], [-0.5, -0.5, -0.25, 0.25, 0.25, 0.0], atol=1e-15)

    def test_torus_diff_wraps_across_boundary(self) -> None:
        diff = torus_diff(TorusPoint((0.45,)), TorusPoint((-0.45,)))
        self.assertAlmostEqual(diff.coords[0], -0.1, places=12)

    def test_torus_diff_dimension_mismatch(self) -> None:
        with self.assertRaises(DimensionMismatchError):
            torus_diff(np.zeros(2), np.zeros(3))

    def test_torus_norm_bounded_by_half_sqrt_d(self) -> None:
        rng = np.random.default_rng(1)
        for _ in range(100):
            x = rng.normal(size=3) * 5
            self.assertLessEqual(torus_norm(x), np.sqrt(3) / 2 + 1e-12)


class TestSampling(unittest.TestCase):
    """采样与种子划分"""

    def test_realization_seed_deterministic_and_distinct(self) -> None:
        self.assertEqual(realization_seed(0, 3), realization_seed(0, 3))
        seeds = {realization_seed(0, i) for i in range(100)}
        self.assertEqual(len(seeds), 100, "不同实现编号应得到不同种子")
        self.assertNotEqual(realization_seed(0, 0), realization_seed(1, 0))

    def test_sample_torus_shape_and_range(self) -> None:
        pts = sample_torus(200, 2, seed=7)
        self.assertEqual((pts.n, pts.d), (200, 2))
        self.assertEqual(pts.model, ModelKind.TORUS)
        self.assertTrue(np.all(pts.coords >= -0.5) and np.all(pts.coords < 0.5))
        np.testing.assert_array_equal(pts.coords, sample_torus(200, 2, seed=7).coords)

    def test_torus_sampling_box_fractions_uniform(self) -> None:
        # 每轴 10 个等宽箱的计数做卡方检验
        pts = sample_torus(5000, 2, seed=11)
        for axis in range(2):
            with self.subTest(axis=axis):
                counts, _ = np.histogram(pts.coords[:, axis], bins=10, range=(-0.5, 0.5))
                self.assertEqual(int(counts.sum()), 5000)
                self.assertGreater(stats.chisquare(counts).pvalue, 1e-3)
        joint, _, _ = np.histogram2d(pts.coords[:, 0], pts.coords[:, 1], bins=5, range=[[-0.5, 0.5]] * 2)
        self.assertGreater(stats.chisquare(joint.ravel()).pvalue, 1e-3)

    def test_sample_mean_within_four_sigma(self) -> None:
        # 均匀分布于 [-1/2, 1/2)：均值 0，标准差 1/√12
        n = 4000
        sigma = 1.0 / np.sqrt(12.0)
        for seed in (0, 1, 2):
            pts = sample_torus(n, 3, seed=seed)
            with self.subTest(seed=seed):
                self.assertTrue(np.all(np.abs(pts.coords.mean(axis=0)) <= 4.0 * sigma / np.sqrt(n)))
                np.testing.assert_allclose(pts.coords.std(axis=0), sigma, rtol=0.05)

    def test_coords_are_read_only(self) -> None:
        pts = sample_torus(5, 1, seed=0)
        with self.assertRaises(ValueError):
            pts.coords[0, 0] = 0.1

    def test_scaled_model_records_delta(self) -> None:
        pts = sample_for_scaled_model(400, 2, gamma=4.0, seed=0)
        self.assertAlmostEqual(pts.delta, 0.1, places=12)
        self.assertEqual(pts.model, ModelKind.SCALED_CUBE)

    def test_scaled_model_rejects_gamma_above_n(self) -> None:
        with self.assertRaises(InvalidParameterError):
            sample_for_scaled_model(10, 1, gamma=11.0, seed=0)
        with self.assertRaises(InvalidParameterError):
            sample_for_scaled_model(10, 1, gamma=0.0, seed=0)

    def test_invalid_sizes(self) -> None:
        with self.assertRaises(InvalidParameterError):
            sample_torus(0, 1, seed=0)
        with self.assertRaises(InvalidParameterError):
            sample_torus(5, 0, seed=0)

    def test_point_set_rejects_out_of_range(self) -> None:
        with self.assertRaises(InvalidParameterError):
            PointSet(coords=np.array([[0.5]]), seed=0)


if __name__ == "__main__":
    unittest.main()
