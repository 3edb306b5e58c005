"""
单元测试：水平集密度 ψ。
"""
from __future__ import annotations

import unittest

import numpy as np

from ermlab.domain.exceptions import InvalidParameterError, KernelPreconditionError
from ermlab.domain.kernels import CompactBoxKernel, CustomCompactKernel, LevelSetBins, level_set_density


class TestLevelSetDensity(unittest.TestCase):
    """ψ 的矩应当复现 ∫ f̂^m = f^{*m}(0)"""

    @classmethod
    def setUpClass(cls) -> None:
        cls.psi = level_set_density(CompactBoxKernel(0.25))

    def test_moments_match_convolution_powers(self) -> None:
        for m, expected in ((2, 0.5), (3, 0.1875), (4, 1.0 / 12.0)):
            with self.subTest(m=m):
                self.assertAlmostEqual(self.psi.moment(m), expected, delta=0.02 * expected)

    def test_bins_exclude_neighbourhood_of_zero(self) -> None:
        psi = self.psi
        self.assertTrue(np.all(psi.bin_hi > psi.bin_lo))
        self.assertTrue(np.all(np.diff(psi.bin_lo) > 0), "箱应按升序排列")
        magnitudes = np.minimum(np.abs(psi.bin_lo), np.abs(psi.bin_hi))
        self.assertTrue(np.all(magnitudes >= psi.eps0 * (1 - 1e-12)))
        self.assertTrue(np.all(psi.masses >= 0))

    def test_negative_values_carry_mass(self) -> None:
        negative = self.psi.masses[self.psi.bin_hi <= 0].sum()
        self.assertGreater(negative, 0.0, "盒核的 f̂ 有负值，负半轴应有质量")

    def test_frame_columns(self) -> None:
        frame = self.psi.to_frame()
        self.assertEqual(list(frame.columns), ["bin_lo", "bin_hi", "mass", "density"])
        self.assertEqual(len(frame), len(self.psi.masses))
        widths = frame["bin_hi"] - frame["bin_lo"]
        np.testing.assert_allclose(frame["density"] * widths, frame["mass"], rtol=1e-12)
        self.assertTrue(np.all(frame["density"] >= 0))

    def test_linear_bins(self) -> None:
        psi = level_set_density(
            CompactBoxKernel(0.25), xi_cutoff=200.0, bins=LevelSetBins(bins_per_side=500, spacing="linear")
        )
        self.assertEqual(psi.xi_cutoff, 200.0)
        self.assertAlmostEqual(psi.moment(2), 0.5, delta=0.02)

    def test_rejects_non_positive_eps0(self) -> None:
        with self.assertRaises(InvalidParameterError):
            level_set_density(CompactBoxKernel(0.25), eps0=0.0)

    def test_rejects_non_hermitian_kernel(self) -> None:
        skew = CustomCompactKernel(lambda x: x[..., 0], d=1, support_radius=0.25, hermitian=False)
        with self.assertRaises(KernelPreconditionError):
            level_set_density(skew)

    def test_unknown_spacing(self) -> None:
        with self.assertRaises(InvalidParameterError):
            LevelSetBins(spacing="cubic").edges(1e-3, 1.0)


if __name__ == "__main__":
    unittest.main()
