"""
核注册与构造

根据 KernelSpec 的名称返回周期核（torus 模型）或紧支撑核（scaled 模型）实例。
"""
from typing import Any, Callable, Dict, Union

from ermlab.domain.exceptions import InvalidParameterError, UnknownKernelError
from ermlab.domain.experiments.config import ExperimentConfig, KernelSpec
from ermlab.domain.kernels.compact import CompactBallKernel, CompactBoxKernel, CompactKernel
from ermlab.domain.kernels.periodic import (
    BallIndicatorKernel,
    BoxIndicatorKernel,
    FourierSeriesKernel,
    PeriodicKernel,
    PureModeKernel,
    TorusDistanceKernel,
)


def _fourier_series(params: Dict[str, Any]) -> FourierSeriesKernel:
    d = int(params.get("d", 1))
    coeffs = {}
    for term in params.get("coefficients", []):
        k = term["k"]
        key = tuple(int(c) for c in (k if isinstance(k, (list, tuple)) else [k]))
        value = term["value"]
        coeffs[key] = complex(value[0], value[1]) if isinstance(value, (list, tuple)) else complex(value)
    return FourierSeriesKernel(coeffs, d=d)


def _pure_mode(params: Dict[str, Any]) -> PureModeKernel:
    k = params.get("k", [0])
    return PureModeKernel(tuple(k) if isinstance(k, (list, tuple)) else (int(k),))


_PERIODIC_KERNELS: Dict[str, Callable[[Dict[str, Any]], PeriodicKernel]] = {
    "box": lambda p: BoxIndicatorKernel(float(p["r"]), int(p.get("d", 1))),
    "ball": lambda p: BallIndicatorKernel(float(p["r"]), int(p.get("d", 1))),
    "fourier_series": _fourier_series,
    "pure_mode": _pure_mode,
    "distance": lambda p: TorusDistanceKernel(int(p.get("d", 1))),
}

_COMPACT_KERNELS: Dict[str, Callable[[Dict[str, Any]], CompactKernel]] = {
    "box": lambda p: CompactBoxKernel(float(p["r"]), int(p.get("d", 1))),
    "ball": lambda p: CompactBallKernel(float(p["r"]), int(p.get("d", 1))),
}


def _build(registry: Dict[str, Callable], spec: KernelSpec):
    if spec.name not in registry:
        raise UnknownKernelError(spec.name, list(registry.keys()))
    try:
        return registry[spec.name](spec.params)
    except KeyError as e:
        raise InvalidParameterError(f"核 {spec.name} 缺少参数: {e}")
    except (TypeError, ValueError) as e:
        raise InvalidParameterError(f"核 {spec.name} 参数非法: {e}")


def build_periodic_kernel(spec: KernelSpec) -> PeriodicKernel:
    """
    构造周期核

    Raises:
        UnknownKernelError: 未注册的核名称
        InvalidParameterError: 参数缺失或越界
    """
    return _build(_PERIODIC_KERNELS, spec)


def build_compact_kernel(spec: KernelSpec) -> CompactKernel:
    """
    构造紧支撑核

    Raises:
        UnknownKernelError: 未注册的核名称
        InvalidParameterError: 参数缺失或越界
    """
    return _build(_COMPACT_KERNELS, spec)


def build_kernel_for(config: ExperimentConfig) -> Union[PeriodicKernel, CompactKernel]:
    """按模型类型选择注册表"""
    if config.model.kind == "scaled":
        return build_compact_kernel(config.kernel)
    return build_periodic_kernel(config.kernel)
