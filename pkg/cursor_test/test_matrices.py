"""
单元测试：矩阵模型构造。
"""
from __future__ import annotations

import unittest

import numpy as np

from ermlab.domain.exceptions import DimensionMismatchError, InvalidParameterError, KernelPreconditionError
from ermlab.domain.kernels import BoxIndicatorKernel, CompactBoxKernel, FourierSeriesKernel, PureModeKernel
from ermlab.domain.matrices import (
    AdjacencyScale,
    HermitianMatrix,
    build_A,
    build_Abar,
    build_B,
    build_geometric_adjacency,
    build_u_deformed,
)
from ermlab.domain.pointset import ModelKind, PointSet, sample_for_scaled_model, sample_torus


class TestBuildA(unittest.TestCase):
    """环面模型 A = (F(X_i - X_j))"""

    def test_symmetric_with_constant_diagonal(self) -> None:
        pts = sample_torus(60, 1, seed=3)
        A = build_A(BoxIndicatorKernel(0.25), pts)
        self.assertTrue(A.is_real)
        np.testing.assert_array_equal(A.entries, A.entries.T)
        np.testing.assert_array_equal(np.diag(A.entries), np.ones(60))
        self.assertEqual(A.provenance["seed"], 3)

    def test_entries_match_pointwise_evaluation(self) -> None:
        pts = sample_torus(25, 2, seed=11)
        kernel = BoxIndicatorKernel(0.2, d=2)
        A = build_A(kernel, pts)
        i, j = 3, 17
        expected = kernel.evaluate(pts.coords[i] - pts.coords[j])
        self.assertEqual(A.entries[i, j], float(expected))

    def test_blocked_and_threaded_fill_identical(self) -> None:
        from ermlab.app.config import settings

        pts = sample_torus(70, 1, seed=5)
        kernel = BoxIndicatorKernel(0.3)
        original = settings.MATRIX_BLOCK_SIZE
        try:
            settings.MATRIX_BLOCK_SIZE = 16
            blocked = build_A(kernel, pts, threads=3)
        finally:
            settings.MATRIX_BLOCK_SIZE = original
        np.testing.assert_array_equal(blocked.entries, build_A(kernel, pts).entries)

    def test_pure_mode_is_hermitian_complex(self) -> None:
        pts = sample_torus(30, 1, seed=0)
        A = build_A(PureModeKernel((2,)), pts)
        self.assertFalse(A.is_real)
        np.testing.assert_allclose(A.entries, A.entries.conj().T, atol=1e-14)
        np.testing.assert_allclose(np.diag(A.entries), np.ones(30))

    def test_dimension_mismatch(self) -> None:
        with self.assertRaises(DimensionMismatchError):
            build_A(BoxIndicatorKernel(0.25, d=2), sample_torus(5, 1, seed=0))

    def test_entries_read_only(self) -> None:
        A = build_A(BoxIndicatorKernel(0.25), sample_torus(5, 1, seed=0))
        with self.assertRaises(ValueError):
            A.entries[0, 1] = 2.0

    def test_non_square_rejected(self) -> None:
        with self.assertRaises(InvalidParameterError):
            HermitianMatrix(entries=np.zeros((2, 3)), is_real=True)


class TestBuildB(unittest.TestCase):
    """缩放立方体模型 B_n 与周期延拓 B̃_n"""

    def test_delta_scaling(self) -> None:
        pts = sample_for_scaled_model(200, 1, gamma=4.0, seed=2)
        B = build_B(CompactBoxKernel(0.25), pts)
        diffs = np.abs(pts.coords[:, 0][:, None] - pts.coords[:, 0][None, :])
        expected = (diffs <= 0.25 * pts.delta).astype(float)
        np.testing.assert_array_equal(B.entries, expected)
        self.assertEqual(B.provenance["builder"], "B")

    def test_periodic_extension_connects_boundary(self) -> None:
        pts = PointSet(
            coords=np.array([[-0.49], [0.0], [0.49]]),
            seed=0,
            model=ModelKind.SCALED_CUBE,
            delta=0.1,
            gamma=0.3,
        )
        kernel = CompactBoxKernel(0.25)
        plain = build_B(kernel, pts)
        wrapped = build_B(kernel, pts, periodic_extension=True)
        self.assertEqual(plain.entries[0, 2], 0.0)
        self.assertEqual(wrapped.entries[0, 2], 1.0, "周期延拓下 -0.49 与 0.49 相距 0.02")
        self.assertEqual(wrapped.entries[0, 1], 0.0)

    def test_requires_delta(self) -> None:
        with self.assertRaises(InvalidParameterError):
            build_B(CompactBoxKernel(0.25), sample_torus(10, 1, seed=0))


class TestDerivedMatrices(unittest.TestCase):
    """几何图、u-形变与 Ā"""

    def test_geometric_adjacency(self) -> None:
        pts = sample_torus(40, 2, seed=4)
        adj = build_geometric_adjacency(pts, 0.2)
        np.testing.assert_array_equal(np.diag(adj.entries), np.zeros(40))
        np.testing.assert_array_equal(adj.entries, adj.entries.T)
        self.assertTrue(set(np.unique(adj.entries)).issubset({0.0, 1.0}))

    def test_geometric_adjacency_scaled_radius(self) -> None:
        pts = sample_for_scaled_model(100, 2, gamma=1.0, seed=1)
        raw = build_geometric_adjacency(pts, 1.5 * pts.delta)
        scaled = build_geometric_adjacency(pts, 1.5, AdjacencyScale.SCALED_BY_DELTA)
        np.testing.assert_array_equal(raw.entries, scaled.entries)

    def test_geometric_adjacency_rejects_bad_radius(self) -> None:
        pts = sample_torus(5, 1, seed=0)
        with self.assertRaises(InvalidParameterError):
            build_geometric_adjacency(pts, 0.0)
        with self.assertRaises(InvalidParameterError):
            build_geometric_adjacency(pts, 1.0, AdjacencyScale.SCALED_BY_DELTA)

    def test_u_deformed_rows_sum_to_zero(self) -> None:
        pts = sample_torus(50, 1, seed=8)
        L = build_u_deformed(BoxIndicatorKernel(0.25), pts, u=1.0)
        np.testing.assert_allclose(L.row_sums(), np.zeros(50), atol=1e-12)
        half = build_u_deformed(BoxIndicatorKernel(0.25), pts, u=0.0)
        np.testing.assert_array_equal(half.entries, build_A(BoxIndicatorKernel(0.25), pts).entries)

    def test_u_deformed_requires_real_kernel(self) -> None:
        with self.assertRaises(KernelPreconditionError):
            build_u_deformed(PureModeKernel((1,)), sample_torus(5, 1, seed=0), u=1.0)

    def test_abar_has_zero_diagonal(self) -> None:
        pts = sample_torus(30, 1, seed=9)
        A = build_A(BoxIndicatorKernel(0.25), pts)
        Abar = build_Abar(BoxIndicatorKernel(0.25), pts)
        np.testing.assert_array_equal(np.diag(Abar.entries), np.zeros(30))
        np.testing.assert_array_equal(Abar.entries, A.entries - np.eye(30))


class TestSpectralSigns(unittest.TestCase):
    """谱的符号与行和上界"""

    def test_box_kernel_has_negative_eigenvalue_at_large_n(self) -> None:
        # F̂(3) = -1/(3π)，n 大时 A/n 必有接近它的负特征值
        n = 400
        A = build_A(BoxIndicatorKernel(0.25), sample_torus(n, 1, seed=21))
        smallest = float(np.min(np.linalg.eigvalsh(A.entries))) / n
        self.assertLess(smallest, -0.05)

    def test_non_negative_fourier_coefficients_give_psd_matrix(self) -> None:
        kernel = FourierSeriesKernel({(0,): 1.0, (1,): 0.5, (-1,): 0.5, (2,): 0.25, (-2,): 0.25})
        for seed in (0, 1):
            with self.subTest(seed=seed):
                A = build_A(kernel, sample_torus(200, 1, seed=seed))
                eigvals = np.linalg.eigvalsh(A.entries)
                self.assertGreaterEqual(float(np.min(eigvals)), -1e-9 * float(np.max(np.abs(eigvals))))

    def test_operator_norm_bound_dominates_spectral_radius(self) -> None:
        pts = sample_for_scaled_model(300, 2, gamma=3.0, seed=4)
        B = build_B(CompactBoxKernel(0.25, d=2), pts)
        radius = float(np.max(np.abs(np.linalg.eigvalsh(B.entries))))
        self.assertLessEqual(radius, B.operator_norm_bound() * (1 + 1e-12))
        self.assertAlmostEqual(B.operator_norm_bound(), float(np.max(B.row_sums())), places=12)


if __name__ == "__main__":
    unittest.main()
