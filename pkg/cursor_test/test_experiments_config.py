"""
单元测试：实验配置校验、加载与核构造。
"""
from __future__ import annotations

import json
import tempfile
import unittest
from pathlib import Path

from ermlab.domain.exceptions import InvalidParameterError, UnknownKernelError
from ermlab.domain.experiments import (
    ExperimentConfig,
    ExperimentConfigLoader,
    KernelSpec,
    build_compact_kernel,
    build_kernel_for,
    build_periodic_kernel,
    validate,
)
from ermlab.domain.kernels import BoxIndicatorKernel, CompactBoxKernel, FourierSeriesKernel, PureModeKernel


def _base(**overrides) -> dict:
    config = {
        "command": "spectrum",
        "kernel": {"name": "box", "params": {"r": 0.25, "d": 1}},
        "n_list": [50],
        "realizations": 2,
    }
    config.update(overrides)
    return config


def _fields(diagnostics) -> set:
    return {d.field for d in diagnostics}


class TestValidate(unittest.TestCase):
    """配置诊断"""

    def test_valid_config_has_no_diagnostics(self) -> None:
        self.assertEqual(validate(_base()), [])

    def test_schema_errors_reported_with_field(self) -> None:
        diagnostics = validate(_base(n_list=[0, 10], realizations=0))
        self.assertIn("n_list", _fields(diagnostics))
        self.assertIn("realizations", _fields(diagnostics))

    def test_unknown_command(self) -> None:
        self.assertIn("command", _fields(validate(_base(command="bogus"))))

    def test_unknown_kernel_reported(self) -> None:
        diagnostics = validate(_base(kernel={"name": "gaussian", "params": {}}))
        self.assertIn("kernel.params", _fields(diagnostics))

    def test_radius_out_of_range_reported(self) -> None:
        diagnostics = validate(_base(kernel={"name": "box", "params": {"r": 0.9}}))
        self.assertIn("kernel.params", _fields(diagnostics))

    def test_scaled_model_requires_n_at_least_gamma(self) -> None:
        diagnostics = validate(_base(model={"kind": "scaled", "gamma": 100.0}, n_list=[50, 200]))
        self.assertIn("n_list", _fields(diagnostics))

    def test_scaled_model_requires_gamma(self) -> None:
        self.assertIn("model", _fields(validate(_base(model={"kind": "scaled"}))))

    def test_command_model_compatibility(self) -> None:
        self.assertIn("model.kind", _fields(validate(_base(command="level-set"))))
        self.assertIn("gammas", _fields(validate(_base(command="density-sweep", model={"kind": "scaled", "gamma": 1.0}))))
        scaled = _base(command="measure-compare", model={"kind": "scaled", "gamma": 1.0})
        self.assertIn("model.kind", _fields(validate(scaled)))

    def test_poisson_bound_needs_two_dimensions(self) -> None:
        config = _base(command="poisson-bound", model={"kind": "scaled", "gamma": 1.0})
        self.assertIn("kernel.params.d", _fields(validate(config)))

    def test_lattice_point_dimension(self) -> None:
        config = _base(command="eigenvector-residual", lattice_k=[0, 0])
        self.assertIn("lattice_k", _fields(validate(config)))

    def test_non_hermitian_kernel_reported(self) -> None:
        kernel = {"name": "fourier_series", "params": {"coefficients": [{"k": 1, "value": [0.0, 1.0]}]}}
        self.assertIn("kernel", _fields(validate(_base(kernel=kernel))))

    def test_correlations_require_real_kernel(self) -> None:
        config = _base(command="correlations", kernel={"name": "pure_mode", "params": {"k": [1]}})
        self.assertIn("kernel", _fields(validate(config)))

    def test_moment_order_cap_for_scaled_models(self) -> None:
        config = _base(command="moment-convergence", model={"kind": "scaled", "gamma": 1.0}, moments=[2, 12])
        self.assertIn("moments", _fields(validate(config)))

    def test_norms_and_windows(self) -> None:
        self.assertIn("norms", _fields(validate(_base(norms=[1]))))
        self.assertIn("windows", _fields(validate(_base(windows=[[0.5, 0.4]]))))

    def test_diagnostic_string(self) -> None:
        diagnostic = validate(_base(threads=0))[0]
        self.assertTrue(str(diagnostic).startswith("threads: "))


class TestLoader(unittest.TestCase):
    """YAML / JSON 配置文档读取与覆盖"""

    def test_load_yaml_and_json(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            yaml_path = Path(tmp) / "exp.yaml"
            yaml_path.write_text("command: spectrum\nkernel:\n  name: box\n  params: {r: 0.25}\n", encoding="utf-8")
            json_path = Path(tmp) / "exp.json"
            json_path.write_text(json.dumps(_base()), encoding="utf-8")
            self.assertEqual(ExperimentConfigLoader.load(yaml_path)["kernel"]["params"]["r"], 0.25)
            self.assertEqual(ExperimentConfigLoader.load(json_path)["n_list"], [50])

    def test_missing_and_malformed(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(FileNotFoundError):
                ExperimentConfigLoader.load(Path(tmp) / "missing.yaml")
            bad = Path(tmp) / "bad.yaml"
            bad.write_text("- just\n- a list\n", encoding="utf-8")
            with self.assertRaises(ValueError):
                ExperimentConfigLoader.load(bad)

    def test_overrides_skip_none(self) -> None:
        merged = ExperimentConfigLoader.apply_overrides(_base(), master_seed=9, threads=None)
        self.assertEqual(merged["master_seed"], 9)
        self.assertNotIn("threads", merged)
        self.assertNotIn("master_seed", _base())


class TestKernelFactory(unittest.TestCase):
    """按名称构造核"""

    def test_model_selects_registry(self) -> None:
        torus = ExperimentConfig.model_validate(_base())
        scaled = ExperimentConfig.model_validate(_base(model={"kind": "scaled", "gamma": 1.0}))
        self.assertIsInstance(build_kernel_for(torus), BoxIndicatorKernel)
        self.assertIsInstance(build_kernel_for(scaled), CompactBoxKernel)

    def test_fourier_series_and_pure_mode(self) -> None:
        spec = KernelSpec(
            name="fourier_series",
            params={"coefficients": [{"k": 0, "value": 1.0}, {"k": 1, "value": 0.5}, {"k": -1, "value": 0.5}]},
        )
        kernel = build_periodic_kernel(spec)
        self.assertIsInstance(kernel, FourierSeriesKernel)
        self.assertAlmostEqual(kernel.value_at_zero().real, 2.0)
        mode = build_periodic_kernel(KernelSpec(name="pure_mode", params={"k": [1, 2]}))
        self.assertIsInstance(mode, PureModeKernel)
        self.assertEqual(mode.d, 2)

    def test_errors(self) -> None:
        with self.assertRaises(UnknownKernelError):
            build_periodic_kernel(KernelSpec(name="gaussian"))
        with self.assertRaises(UnknownKernelError):
            build_compact_kernel(KernelSpec(name="distance"))
        with self.assertRaises(InvalidParameterError):
            build_periodic_kernel(KernelSpec(name="box", params={}))
        with self.assertRaises(InvalidParameterError):
            build_periodic_kernel(KernelSpec(name="box", params={"r": "wide"}))


if __name__ == "__main__":
    unittest.main()
