from ermlab.domain.kernels.compact import (
    CompactBallKernel,
    CompactBoxKernel,
    CompactKernel,
    CustomCompactKernel,
    irwin_hall_density,
)
from ermlab.domain.kernels.convolution import (
    ConvolutionPowerResult,
    ConvolutionSpec,
    convolution_power_at_zero,
)
from ermlab.domain.kernels.fourier import (
    QuadratureResult,
    QuadratureSpec,
    choose_xi_cutoff,
    fourier_coefficient,
    fourier_coefficients_on_cube,
    fourier_transform,
    fourier_transform_grid,
    kernel_l2_norm_sq,
    lattice_cube,
)
from ermlab.domain.kernels.level_set import LevelSetBins, LevelSetDensity, level_set_density
from ermlab.domain.kernels.periodic import (
    BallIndicatorKernel,
    BoxIndicatorKernel,
    CustomPeriodicKernel,
    FourierSeriesKernel,
    LatticePoint,
    PeriodicKernel,
    PureModeKernel,
    TorusDistanceKernel,
    check_hermitian,
    eval_periodic,
)

__all__ = [
    "BallIndicatorKernel",
    "BoxIndicatorKernel",
    "CompactBallKernel",
    "CompactBoxKernel",
    "CompactKernel",
    "ConvolutionPowerResult",
    "ConvolutionSpec",
    "CustomCompactKernel",
    "CustomPeriodicKernel",
    "FourierSeriesKernel",
    "LatticePoint",
    "LevelSetBins",
    "LevelSetDensity",
    "PeriodicKernel",
    "PureModeKernel",
    "QuadratureResult",
    "QuadratureSpec",
    "TorusDistanceKernel",
    "check_hermitian",
    "choose_xi_cutoff",
    "convolution_power_at_zero",
    "eval_periodic",
    "fourier_coefficient",
    "fourier_coefficients_on_cube",
    "fourier_transform",
    "fourier_transform_grid",
    "irwin_hall_density",
    "kernel_l2_norm_sq",
    "lattice_cube",
    "level_set_density",
]
