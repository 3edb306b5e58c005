"""
单元测试：点集 CSV、矩阵二进制转储与结果表写出。
"""
from __future__ import annotations

import json
import tempfile
import unittest
from pathlib import Path

import numpy as np

from ermlab import __version__
from ermlab.domain.exceptions import InvalidParameterError
from ermlab.domain.kernels import BoxIndicatorKernel, PureModeKernel
from ermlab.domain.matrices import build_A
from ermlab.domain.pointset.sampler import sample_torus
from ermlab.infrastructure.io import PointSetCsv, ResultWriter, dump_matrix, load_matrix


class TestPointSetCsv(unittest.TestCase):
    """点集 CSV"""

    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_write_then_read(self) -> None:
        pts = sample_torus(25, 2, seed=11)
        path = PointSetCsv.write(pts, self.tmp / "points.csv")
        self.assertEqual(path.read_text(encoding="utf-8").splitlines()[0], "x1,x2")
        loaded = PointSetCsv.read(path, seed=11)
        self.assertEqual((loaded.n, loaded.d), (25, 2))
        np.testing.assert_array_equal(loaded.coords, pts.coords)

    def test_out_of_range_coordinates_rejected(self) -> None:
        path = self.tmp / "bad.csv"
        path.write_text("x1\n0.1\n0.75\n", encoding="utf-8")
        with self.assertRaises(InvalidParameterError):
            PointSetCsv.read(path)

    def test_missing_file(self) -> None:
        with self.assertRaises(FileNotFoundError):
            PointSetCsv.read(self.tmp / "missing.csv")


class TestMatrixDump(unittest.TestCase):
    """矩阵二进制布局：int64 n，uint8 is_real，行主序元素"""

    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        self.pts = sample_torus(12, 1, seed=5)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_real_matrix(self) -> None:
        H = build_A(BoxIndicatorKernel(0.25), self.pts)
        path = dump_matrix(H, self.tmp / "a.bin")
        self.assertEqual(path.stat().st_size, 8 + 1 + 12 * 12 * 8)
        raw = path.read_bytes()
        self.assertEqual(int.from_bytes(raw[:8], "little"), 12)
        self.assertEqual(raw[8], 1)
        entries, is_real = load_matrix(path)
        self.assertTrue(is_real)
        np.testing.assert_array_equal(entries, np.real(H.entries))

    def test_complex_matrix(self) -> None:
        H = build_A(PureModeKernel((1,)), self.pts)
        path = dump_matrix(H, self.tmp / "mode.bin")
        self.assertEqual(path.stat().st_size, 8 + 1 + 12 * 12 * 16)
        entries, is_real = load_matrix(path)
        self.assertFalse(is_real)
        np.testing.assert_array_equal(entries, H.entries)


class TestResultWriter(unittest.TestCase):
    """结果表与 JSON"""

    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_header_line(self) -> None:
        self.assertEqual(ResultWriter.header_line("spectrum"), f"# erm-spectra v{__version__} spectrum")

    def test_table_written_with_comment_and_read_back(self) -> None:
        rows = [{"n": 10, "value": 0.1}, {"n": 20, "value": 1.0 / 3.0}]
        path = ResultWriter.write_table(rows, ["n", "value"], self.tmp / "nested" / "t.csv", "spectrum")
        lines = path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], ResultWriter.header_line("spectrum"))
        self.assertEqual(lines[1], "n,value")
        self.assertEqual(lines[3], "20,0.333333333333")
        frame = ResultWriter.read_table(path)
        self.assertEqual(list(frame["n"]), [10, 20])

    def test_missing_columns_become_empty(self) -> None:
        path = ResultWriter.write_table([{"n": 1}], ["n", "gamma"], self.tmp / "t.csv", "poisson-bound")
        self.assertEqual(path.read_text(encoding="utf-8").splitlines()[2], "1,")

    def test_spectrum_file(self) -> None:
        path = ResultWriter.write_spectrum(np.array([0.5, -0.25]), 3, self.tmp / "s.csv", "spectrum")
        frame = ResultWriter.read_table(path)
        self.assertEqual(list(frame.columns), ["realization", "eigenvalue"])
        self.assertEqual(list(frame["realization"]), [3, 3])
        self.assertEqual(list(frame["eigenvalue"]), [0.5, -0.25])

    def test_json_converts_numpy_and_complex(self) -> None:
        payload = {
            "array": np.arange(3),
            "scalar": np.float64(0.5),
            "complex": complex(1.0, -2.0),
            "path": self.tmp,
            1: (np.int64(4),),
        }
        path = ResultWriter.write_json(payload, self.tmp / "p.json")
        loaded = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(loaded["array"], [0, 1, 2])
        self.assertEqual(loaded["scalar"], 0.5)
        self.assertEqual(loaded["complex"], {"real": 1.0, "imag": -2.0})
        self.assertEqual(loaded["path"], str(self.tmp))
        self.assertEqual(loaded["1"], [4])


if __name__ == "__main__":
    unittest.main()
